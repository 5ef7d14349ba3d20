"""Command-line surface: subcommands, exit codes, and file outputs."""

import json

import pytest

from ghzcert.certificate import load_document
from ghzcert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_and_verify(tmp_path, capsys):
    cert = tmp_path / "m3.json"
    code, out, _ = run(capsys, "build", "3", "3", "3", "--output", str(cert))
    assert code == 0
    assert "UNSAT after 729" in out
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0
    assert out.startswith("accept")


def test_build_structured_output(capsys):
    code, out, _ = run(capsys, "build", "2", "2", "2", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "ghz-certificate"
    assert doc["lhv"]["assignments_checked"] == 64


def test_build_with_tuple_hint(tmp_path, capsys):
    cert = tmp_path / "hinted.json"
    code, out, _ = run(capsys, "build", "3", "3", "3",
                       "--tuple-hint", "1,1,1,-1", "--output", str(cert))
    assert code == 0
    doc = load_document(str(cert))
    assert doc["state"]["support"] == [[0, 0, 2], [0, 2, 0], [2, 0, 0], [2, 2, 2]]


def test_build_mixed_parity_rejected(capsys):
    code, _, err = run(capsys, "build", "2", "3", "2")
    assert code == 2
    assert "parity" in err


def test_build_mixed_parity_override(tmp_path, capsys):
    cert = tmp_path / "mixed.json"
    code, _, _ = run(capsys, "build", "2", "3", "2", "--allow-mixed-parity",
                     "--output", str(cert))
    assert code == 0
    doc = load_document(str(cert))
    assert doc["parties"]["mixed_parity_experimental"] is True


def test_build_ineligible_hint(capsys):
    code, _, err = run(capsys, "build", "3", "3", "3", "--tuple-hint", "1,1,1,1")
    assert code == 1
    assert "eligible" in err or "eigen-tuple" in err


def test_verify_rejects_tampered_file(tmp_path, capsys):
    cert = tmp_path / "m2.json"
    assert run(capsys, "build", "2", "2", "2", "--output", str(cert))[0] == 0
    doc = json.loads(cert.read_text())
    doc["state"]["coefficients"][0] = "-1"
    cert.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 1
    assert "reject" in out
    assert "eigenvector equation" in out


def test_verify_missing_file(capsys):
    code, _, err = run(capsys, "verify", "/nonexistent/cert.json")
    assert code == 2


def test_ks_build_and_verify(tmp_path, capsys):
    cert = tmp_path / "ks.json"
    code, out, _ = run(capsys, "ks", "2", "--mode", "sign-only",
                       "--output", str(cert))
    assert code == 0
    assert "UNSAT after 1024" in out
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0


def test_ks_odd_levels(capsys):
    code, _, err = run(capsys, "ks", "5")
    assert code == 2
    assert "even" in err


def test_lhv_unsat(capsys):
    code, out, _ = run(capsys, "lhv", "3", "3", "3")
    assert code == 0
    assert "UNSAT after 729" in out
    assert "parity obstruction: yes" in out


def test_lhv_sat_control(capsys):
    code, out, _ = run(capsys, "lhv", "3", "3", "3", "--rhs", "1,1,1,1")
    assert code == 1
    assert "SAT" in out
    assert "witness:" in out


def test_lhv_sign_only(capsys):
    code, out, _ = run(capsys, "lhv", "3", "3", "3", "--sign-only")
    assert code == 0
    assert "UNSAT after 64" in out


def test_spectrum_word(capsys):
    code, out, _ = run(capsys, "spectrum", "3", "3", "3", "--word", "ABB")
    assert code == 0
    assert "-1 x4, 0 x19, 1 x4" in out


def test_spectrum_product_structured(capsys):
    code, out, _ = run(capsys, "spectrum", "3", "3", "3", "--product",
                       "--word", "ABB", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["plan_product_spectrum"] == {"-1": 8, "0": 19}
    assert doc["plan_product_classification"] == "negative-semidefinite"


def test_criteria_w_state(tmp_path, capsys):
    state = tmp_path / "w.json"
    state.write_text(json.dumps({
        "dims": [2, 2, 2],
        "support": [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
        "coefficients": ["1", "1", "1"],
        "norm_sq": "3",
    }))
    code, out, _ = run(capsys, "criteria", "--state", str(state),
                       "--words", "ABB,BAB,BBA,AAA")
    assert code == 1
    assert "not-ghz" in out
    assert "not an eigenvector of word ABB" in out


def test_criteria_ghz_state(tmp_path, capsys):
    cert = tmp_path / "m2.json"
    assert run(capsys, "build", "2", "2", "2", "--output", str(cert))[0] == 0
    doc = load_document(str(cert))
    state = tmp_path / "state.json"
    state.write_text(json.dumps({"dims": doc["parties"]["levels"], **doc["state"]}))
    code, out, _ = run(capsys, "criteria", "--state", str(state))
    assert code == 0
    assert "is-ghz" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["build"])
    assert err.value.code == 2

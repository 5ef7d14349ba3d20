"""Command-line front end.

Exit codes: 0 means accept / unsatisfiable-as-claimed / is-ghz, 1 means
reject / satisfiable / not-ghz (including a construction that finds no
eligible eigenvector), 2 means a usage or input-validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .certificate import (
    StateVector,
    build_ghz_document,
    build_ks_document,
    check_ghz_criteria,
    dumps_document,
    load_document,
    save_document,
    verify_document,
    _pairs_from_doc,
)
from .errors import (
    CertificateError,
    GhzError,
    InvalidLevelsError,
    NoGhzStateError,
    ParityError,
    SearchBoundError,
)
from .exact import format_rational, parse_rational
from .exact import monomial_compose
from .lhv import (
    ConstraintSystem,
    DEFAULT_BOUND,
    brute_force_lhv,
    explain_parity,
    parity_unsat,
)
from .kochen_specker import FULL_SPECTRUM, SIGN_ONLY, build_ks, render_contexts
from .spectral import select_ghz, spectrum_of_monomial, spectrum_of_word
from .words import PartySpec, TensorWord, build_proof_set

TEXT = "text"
STRUCTURED = "structured"


def _parse_tuple(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(part) for part in text.split(","))


def _party_spec(args) -> PartySpec:
    return PartySpec(tuple(args.levels), allow_mixed_parity=args.allow_mixed_parity)


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if args.format == STRUCTURED:
        sys.stdout.write(dumps_document(doc))
    else:
        for line in text_lines:
            print(line)


def _cmd_build(args) -> int:
    parties = _party_spec(args)
    hint = _parse_tuple(args.tuple_hint) if args.tuple_hint else None
    doc = build_ghz_document(parties, hint, args.bound)
    if args.output:
        save_document(doc, args.output)
    lines = [
        f"parties: {' '.join(str(m) for m in parties.levels)}",
        f"words: {' '.join(doc['words'])}",
        f"plan: {' '.join(str(i) for i in doc['product_plan'])}",
        f"eigen tuple: {' '.join(doc['eigen_tuple'])}",
        f"lhv: {doc['lhv']['status']} after {doc['lhv']['assignments_checked']} assignments",
    ]
    if args.output:
        lines.append(f"certificate written to {args.output}")
    _emit(args, doc, lines)
    return 0


def _cmd_verify(args) -> int:
    doc = load_document(args.certificate)
    ok, reason = verify_document(doc, args.bound)
    result = {"result": "accept" if ok else "reject", "reason": reason}
    _emit(args, result, [f"{result['result']}: {reason}"])
    return 0 if ok else 1


def _cmd_ks(args) -> int:
    mode = args.mode
    doc = build_ks_document(args.m, mode)
    if args.output:
        save_document(doc, args.output)
    cfg = build_ks(args.m)
    lines = [
        f"levels: {args.m}",
        "contexts:",
        *("  " + line for line in render_contexts(cfg).split("\n")),
        f"search ({mode}): {doc['search']['status']} after "
        f"{doc['search']['patterns_checked']} patterns",
    ]
    if args.output:
        lines.append(f"certificate written to {args.output}")
    _emit(args, doc, lines)
    return 0 if doc["search"]["status"] == "UNSAT" else 1


def _cmd_lhv(args) -> int:
    parties = _party_spec(args)
    ps = build_proof_set(parties)
    if args.rhs:
        rhs = _parse_tuple(args.rhs)
        if len(rhs) != len(ps.words):
            raise InvalidLevelsError(
                f"system has {len(ps.words)} words; --rhs needs that many entries"
            )
    else:
        rhs = select_ghz(ps).eigen_tuple
    cs = ConstraintSystem.build(ps, rhs)
    analytic = parity_unsat(cs)
    report = brute_force_lhv(cs, args.bound, sign_only=args.sign_only)
    doc = {
        "words": list(ps.letter_words),
        "plan": list(ps.product_plan),
        "rhs": [format_rational(t) for t in rhs],
        "parity_obstruction": analytic,
        "status": report.status,
        "assignments_checked": report.assignments_checked,
        "sign_only": report.sign_only,
        "witness": (
            None
            if report.witness is None
            else {f"{letter}{party + 1}": format_rational(v)
                  for (party, letter), v in report.witness}
        ),
        "explanation": explain_parity(cs),
    }
    lines = [
        f"words: {' '.join(ps.letter_words)}   plan: {' '.join(str(i) for i in ps.product_plan)}",
        f"rhs: {' '.join(doc['rhs'])}",
        f"parity obstruction: {'yes' if analytic else 'no'}",
        f"brute force: {report.status} after {report.assignments_checked} assignments",
    ]
    if report.witness is not None:
        lines.append(
            "witness: "
            + " ".join(f"{k}={v}" for k, v in sorted(doc["witness"].items()))
        )
    _emit(args, doc, lines)
    return 0 if report.status == "UNSAT" else 1


def _cmd_spectrum(args) -> int:
    parties = _party_spec(args)
    doc: dict = {"levels": list(parties.levels)}
    lines: list[str] = []
    if args.word:
        word = TensorWord(args.word, parties)
        spectrum = spectrum_of_word(word)
        doc["word"] = args.word
        doc["spectrum"] = {format_rational(v): m for v, m in spectrum.entries}
        doc["classification"] = spectrum.classify()
        lines.append(f"word {args.word}: " + ", ".join(
            f"{format_rational(v)} x{m}" for v, m in spectrum.entries))
        lines.append(f"classification: {spectrum.classify()}")
    if args.product or not args.word:
        ps = build_proof_set(parties)
        mats = [w.realize() for w in ps.words]
        product = monomial_compose([mats[i] for i in ps.product_plan])
        spectrum = spectrum_of_monomial(product)
        doc["plan_words"] = list(ps.letter_words)
        doc["plan"] = list(ps.product_plan)
        doc["plan_product_spectrum"] = {
            format_rational(v): m for v, m in spectrum.entries
        }
        doc["plan_product_classification"] = spectrum.classify()
        lines.append(
            f"plan product over {' '.join(ps.letter_words)}: "
            + ", ".join(f"{format_rational(v)} x{m}" for v, m in spectrum.entries)
        )
        lines.append(f"classification: {spectrum.classify()}")
    _emit(args, doc, lines)
    return 0


def _cmd_criteria(args) -> int:
    with open(args.state, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CertificateError(
                f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    dims = tuple(int(m) for m in raw["dims"])
    state = StateVector.from_doc(dims, raw)
    if args.pairs:
        pairs = _pairs_from_doc(load_document(args.pairs)["site_operators"])
    else:
        pairs = PartySpec(dims, allow_mixed_parity=True).canonical_pairs()
    if args.words:
        words = tuple(args.words.split(","))
    else:
        spec = PartySpec(dims, allow_mixed_parity=True)
        words = build_proof_set(spec).letter_words
    ok, reason = check_ghz_criteria(state, pairs, words)
    doc = {"result": "is-ghz" if ok else "not-ghz", "reason": reason,
           "words": list(words)}
    _emit(args, doc, [f"{doc['result']}: {reason}"])
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzcert",
        description=(
            "Construct and verify exact certificates of all-or-nothing "
            "nonlocality and noncontextuality proofs for multiparty "
            "multilevel systems."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, output=True):
        p.add_argument("--format", choices=(TEXT, STRUCTURED), default=TEXT,
                       help="stdout rendering (default: text)")
        p.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                       help="cap on enumeration sizes")
        if output:
            p.add_argument("--output", help="path to write the certificate")

    p_build = sub.add_parser("build", help="construct a GHZ certificate")
    p_build.add_argument("levels", type=int, nargs="+", help="levels per party")
    p_build.add_argument("--tuple-hint",
                         help="comma-separated eigenvalues to pin the state")
    p_build.add_argument("--allow-mixed-parity", action="store_true",
                         help="experimental: attempt mixed-parity level lists")
    add_common(p_build)
    p_build.set_defaults(func=_cmd_build)

    p_verify = sub.add_parser("verify", help="re-verify a certificate file")
    p_verify.add_argument("certificate", help="path to the certificate")
    add_common(p_verify, output=False)
    p_verify.set_defaults(func=_cmd_verify)

    p_ks = sub.add_parser("ks", help="build a noncontextuality certificate")
    p_ks.add_argument("m", type=int, help="levels per party (must be even)")
    p_ks.add_argument("--mode", choices=(SIGN_ONLY, FULL_SPECTRUM),
                      default=SIGN_ONLY)
    add_common(p_ks)
    p_ks.set_defaults(func=_cmd_ks)

    p_lhv = sub.add_parser("lhv", help="run the local-value analysis")
    p_lhv.add_argument("levels", type=int, nargs="+")
    p_lhv.add_argument("--rhs", help="comma-separated right-hand sides")
    p_lhv.add_argument("--sign-only", action="store_true",
                       help="fast pre-check over signs instead of spectra")
    p_lhv.add_argument("--allow-mixed-parity", action="store_true")
    add_common(p_lhv, output=False)
    p_lhv.set_defaults(func=_cmd_lhv)

    p_spec = sub.add_parser("spectrum", help="exact spectra of words and plans")
    p_spec.add_argument("levels", type=int, nargs="+")
    p_spec.add_argument("--word", help="letter string, e.g. ABB")
    p_spec.add_argument("--product", action="store_true",
                        help="also show the canonical plan-product spectrum")
    p_spec.add_argument("--allow-mixed-parity", action="store_true")
    add_common(p_spec, output=False)
    p_spec.set_defaults(func=_cmd_spectrum)

    p_crit = sub.add_parser("criteria", help="check a state against the GHZ criteria")
    p_crit.add_argument("--state", required=True,
                        help="JSON state file with dims/support/coefficients/norm_sq")
    p_crit.add_argument("--words", help="comma-separated words (default: canonical)")
    p_crit.add_argument("--pairs",
                        help="JSON file with custom site_operators (default: canonical)")
    add_common(p_crit, output=False)
    p_crit.set_defaults(func=_cmd_criteria)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoGhzStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InvalidLevelsError, ParityError, SearchBoundError,
            CertificateError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GhzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

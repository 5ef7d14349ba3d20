"""Exact spectra and simultaneous eigenbases for commuting monomial words.

Everything here exploits one structural fact: a tensor word acts on the
composite basis by an index involution with symmetric weights. Its spectrum
therefore reads off directly from the orbits of that involution (a fixed
point contributes its weight; a 2-cycle contributes the weight with both
signs), and a commuting set of words is diagonalized orbit by orbit of the
abelian group their involutions generate.

The simultaneous eigenbasis is computed by sequential eigenspace refinement:
within an orbit's coordinate subspace, each word in turn splits the current
subspaces into exact eigencomponents via Lagrange projectors built from the
word's possible eigenvalues on that orbit. Subspaces are kept in reduced row
echelon form, so the output is canonical: orbits ascend by smallest index,
eigenvalue branches descend, and each eigenvector is scaled to primitive
integer coefficients with a positive leading entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NoGhzStateError, NonCommutingSetError, ShapeError
from .exact import MonomialMatrix, ONE, ZERO, monomial_equal, monomial_multiply
from .words import ProofSet, SitePairs

NEGATIVE_DEFINITE = "negative-definite"
NEGATIVE_SEMIDEFINITE = "negative-semidefinite"
POSITIVE_DEFINITE = "positive-definite"
POSITIVE_SEMIDEFINITE = "positive-semidefinite"
INDEFINITE = "indefinite"


@dataclass(frozen=True)
class Spectrum:
    """Exact eigenvalue multiset, stored sorted ascending."""

    entries: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_counts(cls, counts: dict[Fraction, int]) -> Spectrum:
        return cls(tuple(sorted((v, m) for v, m in counts.items() if m)))

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.entries)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, value: Fraction) -> int:
        return self.as_dict().get(value, 0)

    @property
    def zero_count(self) -> int:
        return self.multiplicity(ZERO)

    @property
    def positive_count(self) -> int:
        return sum(m for v, m in self.entries if v > 0)

    @property
    def negative_count(self) -> int:
        return sum(m for v, m in self.entries if v < 0)

    def classify(self) -> str:
        pos, neg, zero = self.positive_count, self.negative_count, self.zero_count
        if pos and neg:
            return INDEFINITE
        if neg:
            return NEGATIVE_SEMIDEFINITE if zero else NEGATIVE_DEFINITE
        if pos:
            return POSITIVE_SEMIDEFINITE if zero else POSITIVE_DEFINITE
        # all-zero spectrum: conventionally reported on the positive side
        return POSITIVE_SEMIDEFINITE


@dataclass(frozen=True)
class OrbitDecomposition:
    """Partition of the composite indices under one or several index maps."""

    dim: int
    orbits: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = sorted(i for orbit in self.orbits for i in orbit)
        if seen != list(range(self.dim)):
            raise ShapeError("orbits do not partition the index range")

    @classmethod
    def from_targets(cls, dim: int, targets: list[tuple[int, ...]]) -> OrbitDecomposition:
        unvisited = set(range(dim))
        orbits = []
        while unvisited:
            seed = min(unvisited)
            frontier = [seed]
            members = {seed}
            while frontier:
                nxt = []
                for x in frontier:
                    for t in targets:
                        y = t[x]
                        if y not in members:
                            members.add(y)
                            nxt.append(y)
                frontier = nxt
            unvisited -= members
            orbits.append(tuple(sorted(members)))
        return cls(dim, tuple(sorted(orbits)))

    @classmethod
    def from_involution(cls, target: tuple[int, ...]) -> OrbitDecomposition:
        return cls.from_targets(len(target), [target])


def spectrum_of_monomial(op: MonomialMatrix) -> Spectrum:
    """Exact spectrum of a diagonal or involutive symmetric-weight monomial.

    Other monomial shapes (longer cycles) fall outside the structured family
    this engine supports and are rejected.
    """
    counts: dict[Fraction, int] = {}
    if op.is_diagonal():
        for w in op.weight:
            counts[w] = counts.get(w, 0) + 1
        return Spectrum.from_counts(counts)
    if not (op.is_involution() and op.has_symmetric_weights()):
        raise ShapeError(
            "spectrum requires a diagonal or involutive symmetric-weight operator"
        )
    for orbit in OrbitDecomposition.from_involution(op.target).orbits:
        if len(orbit) == 1:
            w = op.weight[orbit[0]]
            counts[w] = counts.get(w, 0) + 1
        else:
            w = op.weight[orbit[0]]
            counts[w] = counts.get(w, 0) + 1
            counts[-w] = counts.get(-w, 0) + 1
    return Spectrum.from_counts(counts)


def spectrum_of_word(word, pairs: SitePairs | None = None) -> Spectrum:
    """Exact spectrum of one tensor word."""
    return spectrum_of_monomial(word.realize(pairs))


def classify_definiteness(op: MonomialMatrix | Spectrum) -> str:
    """Definiteness class read off the exact spectrum sign pattern."""
    spectrum = op if isinstance(op, Spectrum) else spectrum_of_monomial(op)
    return spectrum.classify()


# -- sparse rational vectors -------------------------------------------------

Vec = dict[int, Fraction]


def _vec_add(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, ZERO) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _vec_scale(u: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in u.items()}


def _rref(vectors: list[Vec]) -> list[Vec]:
    """Reduced row echelon basis (unique per subspace), pivots ascending."""
    basis: list[tuple[int, Vec]] = []
    for vec in vectors:
        v = dict(vec)
        for pivot, row in basis:
            coeff = v.get(pivot)
            if coeff:
                v = _vec_add(v, _vec_scale(row, -coeff))
        if not v:
            continue
        pivot = min(v)
        v = _vec_scale(v, ONE / v[pivot])
        basis = [
            (p, _vec_add(row, _vec_scale(v, -row.get(pivot, ZERO))))
            for p, row in basis
        ]
        basis.append((pivot, v))
        basis.sort(key=lambda item: item[0])
    return [row for _, row in basis]


def _primitive(v: Vec) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """Scale to coprime integer coefficients with positive leading entry."""
    support = tuple(sorted(v))
    denom_lcm = 1
    for k in support:
        d = v[k].denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = [int(v[k] * denom_lcm) for k in support]
    g = 0
    for value in ints:
        g = gcd(g, abs(value))
    ints = [value // g for value in ints]
    if ints[0] < 0:
        ints = [-value for value in ints]
    return support, tuple(Fraction(value) for value in ints)


@dataclass(frozen=True)
class JointEigenvector:
    """One simultaneous eigenvector with its per-word eigenvalues."""

    eigen_tuple: tuple[Fraction, ...]
    support: tuple[int, ...]
    coefficients: tuple[Fraction, ...]

    def as_vec(self) -> Vec:
        return dict(zip(self.support, self.coefficients))

    @property
    def norm_sq(self) -> Fraction:
        return sum((c * c for c in self.coefficients), ZERO)


@dataclass(frozen=True)
class GhzState:
    """A selected eligible eigenvector: nonzero eigenvalues whose planned
    product is negative. Coefficients are primitive integers; the squared
    norm is carried separately so nothing ever leaves rational arithmetic."""

    support: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    norm_sq: Fraction
    eigen_tuple: tuple[Fraction, ...]

    def as_vec(self) -> Vec:
        return dict(zip(self.support, self.coefficients))


def _eigenvalue_candidates(op: MonomialMatrix, orbit: tuple[int, ...]) -> list[Fraction]:
    """Possible eigenvalues of a word restricted to one orbit subspace."""
    values: set[Fraction] = set()
    for x in orbit:
        w = op.weight[x]
        if op.target[x] == x:
            values.add(w)
        else:
            values.add(w)
            values.add(-w)
    return sorted(values, reverse=True)


def _project_eigenspace(
    op: MonomialMatrix, basis: list[Vec], eigenvalue: Fraction, candidates: list[Fraction]
) -> list[Vec]:
    """Lagrange projector onto one eigenvalue, applied to a subspace basis."""
    projected = []
    for v in basis:
        u = dict(v)
        for mu in candidates:
            if mu == eigenvalue:
                continue
            u = _vec_scale(
                _vec_add(op.apply(u), _vec_scale(u, -mu)), ONE / (eigenvalue - mu)
            )
        if u:
            projected.append(u)
    return _rref(projected)


def check_mutually_commuting(mats: list[MonomialMatrix]) -> bool:
    for a, b in itertools.combinations(mats, 2):
        if not monomial_equal(monomial_multiply(a, b), monomial_multiply(b, a)):
            return False
    return True


def simultaneous_eigenbasis(
    ps: ProofSet, pairs: SitePairs | None = None
) -> tuple[JointEigenvector, ...]:
    """Full exact simultaneous eigenbasis of a commuting word set.

    Returns exactly dim vectors; each is an eigenvector of every word, and
    vectors from different eigenvalue tuples are orthogonal (the words are
    symmetric matrices). Deterministic: see the module docstring.
    """
    mats = [w.realize(pairs) for w in ps.words]
    if not check_mutually_commuting(mats):
        raise NonCommutingSetError("word set is not mutually commuting")
    dim = mats[0].dim
    decomposition = OrbitDecomposition.from_targets(dim, [m.target for m in mats])

    out: list[JointEigenvector] = []
    for orbit in decomposition.orbits:
        spaces: list[tuple[list[Vec], tuple[Fraction, ...]]] = [
            ([{j: ONE} for j in orbit], ())
        ]
        for op in mats:
            candidates = _eigenvalue_candidates(op, orbit)
            refined: list[tuple[list[Vec], tuple[Fraction, ...]]] = []
            for basis, partial in spaces:
                found = 0
                for lam in candidates:
                    sub = _project_eigenspace(op, basis, lam, candidates)
                    if sub:
                        refined.append((sub, partial + (lam,)))
                        found += len(sub)
                if found != len(basis):
                    raise AssertionError("eigenspace refinement lost dimensions")
            spaces = refined
        for basis, tup in spaces:
            for v in basis:
                support, coeffs = _primitive(v)
                out.append(JointEigenvector(tup, support, coeffs))
    if len(out) != dim:
        raise AssertionError("eigenbasis is incomplete")
    return tuple(out)


def eigen_tuple_plan_product(
    eigen_tuple: tuple[Fraction, ...], plan: tuple[int, ...]
) -> Fraction:
    prod = ONE
    for i in plan:
        prod *= eigen_tuple[i]
    return prod


def is_eligible(eigen_tuple: tuple[Fraction, ...], plan: tuple[int, ...]) -> bool:
    """Nonzero everywhere and negative product along the plan."""
    if any(not t for t in eigen_tuple):
        return False
    return eigen_tuple_plan_product(eigen_tuple, plan) < 0


def select_ghz(
    ps: ProofSet,
    tuple_hint: tuple[Fraction, ...] | None = None,
    pairs: SitePairs | None = None,
) -> GhzState:
    """Pick the entangled eigenvector the contradiction is built on.

    With a hint, returns the eigenvector carrying exactly that eigenvalue
    tuple; otherwise the first eligible one in the deterministic basis order.
    """
    basis = simultaneous_eigenbasis(ps, pairs)
    chosen: JointEigenvector | None = None
    if tuple_hint is not None:
        if len(tuple_hint) != len(ps.words):
            raise ValueError(
                f"hint has {len(tuple_hint)} entries for {len(ps.words)} words"
            )
        for vec in basis:
            if vec.eigen_tuple == tuple(tuple_hint):
                chosen = vec
                break
        if chosen is None:
            raise NoGhzStateError(
                "no simultaneous eigenvector carries the requested eigen-tuple"
            )
        if not is_eligible(chosen.eigen_tuple, ps.product_plan):
            raise NoGhzStateError(
                "requested eigen-tuple is not eligible: it has a zero entry "
                "or a nonnegative plan product"
            )
    else:
        for vec in basis:
            if is_eligible(vec.eigen_tuple, ps.product_plan):
                chosen = vec
                break
        if chosen is None:
            raise NoGhzStateError(
                "no simultaneous eigenvector has all-nonzero eigenvalues with "
                "a negative plan product"
            )
    state = GhzState(
        chosen.support, chosen.coefficients, chosen.norm_sq, chosen.eigen_tuple
    )
    _check_state(state, ps, pairs)
    return state


def _check_state(state: GhzState, ps: ProofSet, pairs: SitePairs | None) -> None:
    """Re-verify the eigenvector equations before handing the state out."""
    vec = state.as_vec()
    for word, lam in zip(ps.words, state.eigen_tuple):
        image = word.realize(pairs).apply(vec)
        expected = _vec_scale(vec, lam)
        if image != expected:
            raise AssertionError(f"state fails the eigenvector equation for {word}")

"""Tensor words over the letters {A, B} and the rules that govern a proof set.

A word assigns one letter per party; letter A selects the diagonal site
operator and letter B the anti-diagonal one. Two words commute exactly when
their letters differ at an even number of positions (sitewise anticommutation
turns each differing position into one sign flip).

A usable four-word set must satisfy four combinatorial requirements:

1. every word carries the same parity of A letters (pairwise commutation);
2. exactly one word's A count differs from the common count of the others,
   with the same parity (keeps the plan product free of positive eigenvalues);
3. counted through the product plan, every one-particle operator that is
   used at all is used an even number of times (the parity contradiction);
4. both letters occur at every party (all particles matter).

Odd party counts admit such sets directly; even party counts do not, and are
handled by extending an odd set with a trailing B plus one extra word that is
taken twice in the product plan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    InvalidLevelsError,
    ParityError,
    PartyMismatchError,
    SearchBoundError,
)
from .exact import MonomialMatrix, monomial_tensor
from .siteops import SiteOperator, canonical_pair

LETTERS = "AB"

SitePairs = tuple[tuple[SiteOperator, SiteOperator], ...]


@dataclass(frozen=True)
class PartySpec:
    """Level counts per party, n >= 3, uniform parity unless overridden.

    ``allow_mixed_parity`` is an experimental escape hatch: constructions on
    mixed-parity level lists carry no analytic guarantee and are only as good
    as the downstream oracle verification.
    """

    levels: tuple[int, ...]
    allow_mixed_parity: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(int(m) for m in self.levels))
        if len(self.levels) < 3:
            raise InvalidLevelsError(
                f"need at least 3 parties, got {len(self.levels)}"
            )
        if any(m < 2 for m in self.levels):
            raise InvalidLevelsError("every party needs at least 2 levels")
        parities = {m % 2 for m in self.levels}
        if len(parities) > 1 and not self.allow_mixed_parity:
            raise ParityError(
                f"level counts {self.levels} do not share one parity"
            )

    @property
    def n(self) -> int:
        return len(self.levels)

    @property
    def dim(self) -> int:
        out = 1
        for m in self.levels:
            out *= m
        return out

    @property
    def mixed_parity(self) -> bool:
        return len({m % 2 for m in self.levels}) > 1

    def canonical_pairs(self) -> SitePairs:
        return tuple(canonical_pair(m) for m in self.levels)

    def flat_index(self, digits: tuple[int, ...]) -> int:
        idx = 0
        for m, d in zip(self.levels, digits):
            if not 0 <= d < m:
                raise IndexError(f"digit {d} out of range for {m} levels")
            idx = idx * m + d
        return idx

    def digits(self, flat: int) -> tuple[int, ...]:
        out = []
        for m in reversed(self.levels):
            out.append(flat % m)
            flat //= m
        return tuple(reversed(out))


@dataclass(frozen=True)
class TensorWord:
    """A letter per party; realized as a weighted involutive monomial matrix."""

    letters: str
    parties: PartySpec

    def __post_init__(self) -> None:
        if len(self.letters) != self.parties.n:
            raise PartyMismatchError(
                f"word {self.letters!r} has {len(self.letters)} letters "
                f"for {self.parties.n} parties"
            )
        if any(c not in LETTERS for c in self.letters):
            raise ValueError(f"word letters must be drawn from {LETTERS!r}")

    @property
    def a_count(self) -> int:
        return self.letters.count("A")

    def realize(self, pairs: SitePairs | None = None) -> MonomialMatrix:
        """The word's operator as a monomial matrix on the composite space."""
        if pairs is None:
            pairs = self.parties.canonical_pairs()
        mats = []
        for letter, (a_op, b_op), m in zip(self.letters, pairs, self.parties.levels):
            op = a_op if letter == "A" else b_op
            if op.dim != m:
                raise PartyMismatchError(
                    f"site operator dimension {op.dim} does not match level {m}"
                )
            mats.append(op.to_monomial())
        acc = mats[0]
        for mat in mats[1:]:
            acc = monomial_tensor(acc, mat)
        return acc

    def __str__(self) -> str:
        return self.letters


def words_commute(u: TensorWord, v: TensorWord) -> bool:
    """True iff the realized operators commute: even letter Hamming distance."""
    if u.parties != v.parties:
        raise PartyMismatchError("words belong to different party specs")
    distance = sum(1 for x, y in zip(u.letters, v.letters) if x != y)
    return distance % 2 == 0


@dataclass(frozen=True)
class RequirementFlags:
    """Validation record for the four proof-set requirements."""

    equal_a_parity: bool
    unique_count_outlier: bool
    even_slot_usage: bool
    both_letters_per_party: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.equal_a_parity
            and self.unique_count_outlier
            and self.even_slot_usage
            and self.both_letters_per_party
        )

    def as_dict(self) -> dict[str, bool]:
        return {
            "equal_a_parity": self.equal_a_parity,
            "unique_count_outlier": self.unique_count_outlier,
            "even_slot_usage": self.even_slot_usage,
            "both_letters_per_party": self.both_letters_per_party,
        }


def _flags(letter_words: tuple[str, ...], plan: tuple[int, ...]) -> RequirementFlags:
    n = len(letter_words[0])
    plan_words = [letter_words[i] for i in plan]

    a_counts = [w.count("A") for w in letter_words]
    equal_a_parity = len({c % 2 for c in a_counts}) == 1

    plan_counts = [w.count("A") for w in plan_words]
    distinct: dict[int, int] = {}
    for c in plan_counts:
        distinct[c] = distinct.get(c, 0) + 1
    unique_count_outlier = (
        len(distinct) == 2
        and sorted(distinct.values())[0] == 1
        and len({c % 2 for c in distinct}) == 1
    )

    even_slot_usage = True
    for party in range(n):
        for letter in LETTERS:
            used = sum(1 for w in plan_words if w[party] == letter)
            if used % 2 != 0:
                even_slot_usage = False

    both_letters_per_party = all(
        {w[party] for w in letter_words} == set(LETTERS) for party in range(n)
    )

    return RequirementFlags(
        equal_a_parity, unique_count_outlier, even_slot_usage, both_letters_per_party
    )


def plan_product_sign(letter_words: tuple[str, ...], plan: tuple[int, ...]) -> int:
    """Sign of every nonzero diagonal entry of the plan product.

    The product of the planned words factors sitewise; at each site the
    letters multiply out to a nonnegative diagonal matrix times (-1) raised
    to the number of B-before-A letter pairs. Commutation makes the total
    parity independent of the plan order.
    """
    seq = [letter_words[i] for i in plan]
    inversions = 0
    n = len(seq[0])
    for party in range(n):
        col = [w[party] for w in seq]
        for p in range(len(col)):
            for q in range(p + 1, len(col)):
                if col[p] == "B" and col[q] == "A":
                    inversions += 1
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class ProofSet:
    """Mutually commuting words plus the plan of indices whose operator
    product must have a nonpositive spectrum."""

    words: tuple[TensorWord, ...]
    product_plan: tuple[int, ...]
    requirement_flags: RequirementFlags

    def __post_init__(self) -> None:
        if not self.words:
            raise ValueError("a proof set needs at least one word")
        parties = self.words[0].parties
        for w in self.words[1:]:
            if w.parties != parties:
                raise PartyMismatchError("proof-set words span different party specs")
        for u, v in itertools.combinations(self.words, 2):
            if not words_commute(u, v):
                raise ValueError(f"words {u} and {v} do not commute")
        if any(not 0 <= i < len(self.words) for i in self.product_plan):
            raise ValueError("product plan references a word outside the set")

    @classmethod
    def assemble(
        cls, words: tuple[TensorWord, ...], plan: tuple[int, ...] | None = None
    ) -> ProofSet:
        if plan is None:
            plan = tuple(range(len(words)))
        flags = _flags(tuple(w.letters for w in words), plan)
        return cls(words, plan, flags)

    @property
    def parties(self) -> PartySpec:
        return self.words[0].parties

    @property
    def letter_words(self) -> tuple[str, ...]:
        return tuple(w.letters for w in self.words)

    def product_sign(self) -> int:
        return plan_product_sign(self.letter_words, self.product_plan)


def validate_requirements(ps: ProofSet) -> RequirementFlags:
    """Recompute the four requirement flags for a proof set."""
    if not ps.words:
        raise ValueError("empty proof set")
    return _flags(ps.letter_words, ps.product_plan)


def _all_words(n: int) -> list[str]:
    return ["".join(c) for c in itertools.product(LETTERS, repeat=n)]


def _search_four_sets(n: int):
    """Yield 4-word candidates in lexicographic order with column pruning.

    Requirements 3 and 4 force every party column of a valid 4-word set to
    hold exactly two A and two B letters, which prunes the search hard.
    """
    words = _all_words(n)
    total = len(words)

    def recurse(chosen: list[str], start: int, acol: list[int], bcol: list[int]):
        depth = len(chosen)
        if depth == 4:
            yield tuple(chosen)
            return
        remaining = 4 - depth
        for idx in range(start, total):
            w = words[idx]
            if chosen and (w.count("A") - chosen[0].count("A")) % 2 != 0:
                continue
            na = [acol[p] + (1 if w[p] == "A" else 0) for p in range(n)]
            nb = [bcol[p] + (1 if w[p] == "B" else 0) for p in range(n)]
            rest = remaining - 1
            if any(a > 2 or b > 2 for a, b in zip(na, nb)):
                continue
            if any(a + rest < 2 or b + rest < 2 for a, b in zip(na, nb)):
                continue
            chosen.append(w)
            yield from recurse(chosen, idx + 1, na, nb)
            chosen.pop()

    yield from recurse([], 0, [0] * n, [0] * n)


def generate_odd_set(parties: PartySpec) -> ProofSet:
    """Deterministic four-word proof set for an odd number of parties.

    Selects the lexicographically first (letter order A < B, candidate sets
    compared row-wise after sorting) four-word set whose requirement flags
    all hold and whose plan product carries a negative sign. The returned
    order puts the three common-count words first, sorted, and the word with
    the outlying A count last, so that the odd-signed equation is always the
    final one.
    """
    if parties.n % 2 == 0:
        raise ParityError(f"party count {parties.n} is even; use extend_even_set")
    plan = (0, 1, 2, 3)
    for candidate in _search_four_sets(parties.n):
        if not _flags(candidate, plan).all_ok:
            continue
        if plan_product_sign(candidate, plan) != -1:
            continue
        ordered = _outlier_last(candidate)
        words = tuple(TensorWord(w, parties) for w in ordered)
        return ProofSet.assemble(words, plan)
    raise ValueError(f"no valid four-word set exists for {parties.n} parties")


def _outlier_last(candidate: tuple[str, ...]) -> tuple[str, ...]:
    counts = [w.count("A") for w in candidate]
    outlier_value = next(c for c in counts if counts.count(c) == 1)
    common = sorted(w for w in candidate if w.count("A") != outlier_value)
    outlier = next(w for w in candidate if w.count("A") == outlier_value)
    return tuple(common) + (outlier,)


def extend_even_set(parties: PartySpec) -> ProofSet:
    """Five-word proof set for an even number of parties.

    Builds the odd set on the first n-1 parties, appends letter B to every
    word, and adds the lexicographically first word ending in A (with
    matching A-count parity) such that all requirement flags hold under the
    six-factor plan that counts the new word twice.
    """
    if parties.n % 2 == 1:
        raise ParityError(f"party count {parties.n} is odd; use generate_odd_set")
    if parties.n < 4:
        raise InvalidLevelsError("even extension needs at least 4 parties")
    sub = PartySpec(parties.levels[:-1], allow_mixed_parity=parties.allow_mixed_parity)
    base = generate_odd_set(sub)
    extended = tuple(w.letters + "B" for w in base.words)
    base_parity = base.words[0].a_count % 2
    plan = (0, 1, 2, 3, 4, 4)
    for prefix in itertools.product(LETTERS, repeat=parties.n - 1):
        fifth = "".join(prefix) + "A"
        if fifth.count("A") % 2 != base_parity:
            continue
        candidate = extended + (fifth,)
        if not _flags(candidate, plan).all_ok:
            continue
        if plan_product_sign(candidate, plan) != -1:
            continue
        words = tuple(TensorWord(w, parties) for w in candidate)
        return ProofSet.assemble(words, plan)
    raise ValueError(f"no fifth word completes the even extension for {parties.n} parties")


def build_proof_set(parties: PartySpec) -> ProofSet:
    """Canonical proof set for any party spec: odd n directly, even n extended."""
    if parties.n % 2 == 1:
        return generate_odd_set(parties)
    return extend_even_set(parties)


def exhaustive_no_4set(parties: PartySpec) -> bool:
    """Confirm by enumeration that no four-word set meets all four
    requirements. Only small party counts are searchable; n = 4 is the claim
    of interest, n = 3 is the deliberate counterexample."""
    if parties.n > 4:
        raise SearchBoundError(
            f"exhaustive four-word search is bounded to n <= 4, got {parties.n}"
        )
    plan = (0, 1, 2, 3)
    for candidate in itertools.combinations(_all_words(parties.n), 4):
        if _flags(tuple(candidate), plan).all_ok:
            return False
    return True

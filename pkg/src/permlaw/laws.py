"""Law detection and the shortest-law length.

A word is a law in a group when every substitution evaluates to the
identity.  Sampling can only refute law-ness; confirmation requires
exhausting the (pruned) tuple space, and reports keep the three
outcomes "law-proved" / "non-law-witness" / "inconclusive" strictly
apart so a budget or cap can never masquerade as a mathematical result.

The exhaustive scan restricts the first variable to conjugacy-class
representatives: conjugating a tuple diagonally conjugates the word's
value, so law-ness is insensitive to replacing the first entry by a
class representative.  Tuples differing only in the last variable reuse
the evaluation's prefix products, which is the dominant cost win.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from random import Random
from typing import Iterator, Sequence

from .caps import Caps, resolve
from .errors import CapExceeded
from .groups import PermGroup
from .perms import Permutation
from .structure import nonsolvable_length
from .words import FreeWord, SymmetryLevel, enumerate_words, evaluate


class LawStatus(enum.Enum):
    LAW_PROVED = "law-proved"
    NON_LAW_WITNESS = "non-law-witness"
    INCONCLUSIVE = "inconclusive"


@dataclass
class LawReport:
    word: FreeWord
    status: LawStatus
    witness: tuple[Permutation, ...] | None = None
    tuples_checked: int = 0
    note: str = ""

    def __post_init__(self):
        if self.status is LawStatus.NON_LAW_WITNESS:
            assert self.witness is not None and not evaluate(self.word, self.witness).is_identity()
        else:
            assert self.witness is None


# -- incremental tuple scanning ------------------------------------------------


class _PrefixScanner:
    """Evaluate one word over a rectangular tuple space, reusing prefix
    products across tuples that share a prefix of variable assignments.

    Slot 0 iterates its own element list (class representatives); the
    remaining slots iterate full element lists with the last slot
    moving fastest.
    """

    def __init__(self, word: FreeWord, slot_elements: Sequence[Sequence[Permutation]], degree: int):
        self.letters = word.letters
        self.slots = slot_elements
        self.k = len(slot_elements)
        self.degree = degree
        # first letter position that mentions each variable (1-based slots)
        self.first_pos = {}
        for pos, (var, _sign) in enumerate(self.letters):
            self.first_pos.setdefault(var, pos)
        self.needs_inverse = {var for var, sign in self.letters if sign == -1}

    def scan(self) -> Iterator[tuple[tuple[Permutation, ...], Permutation]]:
        indices = [0] * self.k
        values: list[Permutation] = [slot[0] for slot in self.slots]
        inverses: dict[int, Permutation] = {
            v: values[v - 1].inverse() for v in self.needs_inverse
        }
        n = len(self.letters)
        prefix = [Permutation.identity(self.degree)] * (n + 1)
        dirty_from = 0
        while True:
            for pos in range(dirty_from, n):
                var, sign = self.letters[pos]
                factor = values[var - 1] if sign == 1 else inverses[var]
                prefix[pos + 1] = prefix[pos] * factor
            yield tuple(values), prefix[n]
            # odometer: last slot fastest
            slot = self.k - 1
            while slot >= 0:
                indices[slot] += 1
                if indices[slot] < len(self.slots[slot]):
                    values[slot] = self.slots[slot][indices[slot]]
                    if (slot + 1) in self.needs_inverse:
                        inverses[slot + 1] = values[slot].inverse()
                    break
                indices[slot] = 0
                values[slot] = self.slots[slot][0]
                if (slot + 1) in self.needs_inverse:
                    inverses[slot + 1] = values[slot].inverse()
                slot -= 1
            if slot < 0:
                return
            changed_vars = [v for v in range(slot + 1, self.k + 1) if v in self.first_pos]
            dirty_from = min((self.first_pos[v] for v in changed_vars), default=n)


# -- witness search ----------------------------------------------------------------


def non_law_witness(
    group: PermGroup,
    word: FreeWord,
    budget: int = 20_000,
    seed: int = 0,
    caps: Caps | None = None,
    random_phase: int = 2000,
) -> LawReport:
    """Search for a tuple where the word does not vanish: seeded random
    probes first, then a systematic prefix of the exhaustive scan, up to
    `budget` evaluations in total."""
    if word.is_trivial():
        return LawReport(word, LawStatus.INCONCLUSIVE, note="trivial word is vacuously a law")
    caps = resolve(caps)
    k = word.variable_count
    rng = Random(seed)
    checked = 0
    for _ in range(min(budget, random_phase)):
        tup = tuple(group.random_element(rng) for _ in range(k))
        checked += 1
        if not evaluate(word, tup).is_identity():
            return LawReport(word, LawStatus.NON_LAW_WITNESS, tuple(tup), checked, "random phase")
    if checked < budget and group.order() <= caps.element_cap:
        reps = group.conjugacy_class_reps(caps)
        elems = group.elements(caps)
        scanner = _PrefixScanner(word, [reps] + [elems] * (k - 1), group.degree)
        for tup, value in scanner.scan():
            if checked >= budget:
                break
            checked += 1
            if not value.is_identity():
                return LawReport(word, LawStatus.NON_LAW_WITNESS, tup, checked, "systematic phase")
    return LawReport(word, LawStatus.INCONCLUSIVE, None, checked, "budget exhausted")


def is_law(group: PermGroup, word: FreeWord, caps: Caps | None = None) -> LawReport:
    """Exhaustive law check over class-representative-pruned tuples."""
    if word.is_trivial():
        return LawReport(word, LawStatus.LAW_PROVED, note="trivial word")
    caps = resolve(caps)
    if group.is_trivial():
        return LawReport(word, LawStatus.LAW_PROVED, note="trivial group")
    if group.order() > caps.element_cap:
        return LawReport(
            word, LawStatus.INCONCLUSIVE,
            note=f"group order {group.order()} exceeds element cap {caps.element_cap}")
    k = word.variable_count
    reps = group.conjugacy_class_reps(caps)
    space = len(reps) * group.order() ** (k - 1)
    if space > caps.tuple_cap:
        return LawReport(
            word, LawStatus.INCONCLUSIVE,
            note=f"tuple space {space} exceeds tuple cap {caps.tuple_cap}")
    elems = group.elements(caps)
    scanner = _PrefixScanner(word, [reps] + [list(elems)] * (k - 1), group.degree)
    checked = 0
    for tup, value in scanner.scan():
        checked += 1
        if not value.is_identity():
            return LawReport(word, LawStatus.NON_LAW_WITNESS, tup, checked)
    return LawReport(word, LawStatus.LAW_PROVED, None, checked)


# -- shortest laws ------------------------------------------------------------------


@dataclass
class NuResult:
    """Outcome of the shortest-law search up to a length bound."""
    group_name: str | None
    max_length: int
    value: int | None            # exact shortest-law length, when found
    law: FreeWord | None
    lower_bound: int             # every length <= lower_bound is witnessed law-free
    inconclusive: list[LawReport] = field(default_factory=list)
    words_checked: int = 0

    @property
    def exact(self) -> bool:
        return self.value is not None

    def describe(self) -> str:
        if self.exact:
            return f"nu = {self.value} (law: {self.law})"
        if self.inconclusive:
            return f"nu undetermined at length {self.lower_bound + 1} ({len(self.inconclusive)} inconclusive words)"
        return f"nu > {self.max_length}"


def nu(
    group: PermGroup,
    max_length: int,
    caps: Caps | None = None,
    seed: int = 0,
    level: SymmetryLevel = SymmetryLevel.FULL,
    witness_budget: int = 20_000,
) -> NuResult:
    """Shortest-law length by exhaustive search over canonical words.

    Length by length, each canonical word first gets a cheap witness
    search and then, if still unresolved, an exhaustive law check.  The
    first length admitting a proved law is the answer; a length with
    only witnesses moves the lower bound up.
    """
    caps = resolve(caps)
    result = NuResult(group.name, max_length, None, None, 0)
    for length in range(1, max_length + 1):
        inconclusive_here: list[LawReport] = []
        law_here: FreeWord | None = None
        for word in enumerate_words(length, level):
            result.words_checked += 1
            probe = non_law_witness(group, word, budget=witness_budget, seed=seed, caps=caps)
            if probe.status is LawStatus.NON_LAW_WITNESS:
                continue
            confirm = is_law(group, word, caps)
            if confirm.status is LawStatus.LAW_PROVED:
                law_here = word
                break
            if confirm.status is LawStatus.INCONCLUSIVE:
                inconclusive_here.append(confirm)
            # a witness found by the exhaustive pass resolves the word
        if law_here is not None:
            result.value = length
            result.law = law_here
            return result
        if inconclusive_here:
            result.inconclusive = inconclusive_here
            return result
        result.lower_bound = length
    return result


# -- campaign: no short word is a law -------------------------------------------------


@dataclass
class WordWitnessLine:
    word: FreeWord
    status: LawStatus
    witness: tuple[Permutation, ...] | None
    phase: str


@dataclass
class TheoremReport:
    theorem: str
    group_name: str | None
    lamda: int
    status: str                   # PASS | FAIL | FAIL-TO-DECIDE
    lines: list[WordWitnessLine] = field(default_factory=list)
    seed: int = 0
    detail: str = ""


def verify_theorem_a(
    group: PermGroup,
    caps: Caps | None = None,
    seed: int = 0,
    witness_budget: int = 50_000,
) -> TheoremReport:
    """Check that no nontrivial word of length up to the nonsolvable
    length is a law: every canonical word of length <= lambda must
    receive an explicit non-law witness.  Any unresolved word yields
    FAIL-TO-DECIDE, never a silent pass."""
    caps = resolve(caps)
    try:
        lam = nonsolvable_length(group, caps)
    except CapExceeded as exc:
        return TheoremReport("A", group.name, -1, "FAIL-TO-DECIDE", detail=str(exc), seed=seed)
    report = TheoremReport("A", group.name, lam, "PASS", seed=seed)
    for length in range(1, lam + 1):
        for word in enumerate_words(length, SymmetryLevel.FULL):
            probe = non_law_witness(group, word, budget=witness_budget, seed=seed, caps=caps)
            report.lines.append(
                WordWitnessLine(word, probe.status, probe.witness, probe.note))
            if probe.status is not LawStatus.NON_LAW_WITNESS:
                report.status = "FAIL-TO-DECIDE"
                report.detail = f"no witness within budget for {word}"
    return report

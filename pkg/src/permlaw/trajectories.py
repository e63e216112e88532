"""Distinct-trajectory searches and the two campaign harnesses built on
them.

For a word of length n, a base point omega and a tuple, the trajectory
is the sequence of images of omega under the word's prefixes.  The
searches look for tuples making all n+1 trajectory points distinct,
either over the whole group or, in ``sylow2`` mode, over a deterministic
stream of Sylow 2-subgroup conjugates (the conjugating elements walk
the group's chain-transversal odometer).

Word enumeration here uses rename/invert symmetry only: renaming
variables permutes the tuple and inverting a variable inverts its
entry, both leaving the trajectory pointwise unchanged, while a cyclic
shift evaluates prefixes of a *different* word and does not preserve
trajectories.  Enumerating at the stronger law symmetry would silently
skip words whose trajectory behaviour differs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from random import Random
from typing import Iterator, Sequence

from .caps import Caps, resolve
from .certificates import TrajectoryCertificate, validate_certificate
from .errors import PermlawError
from .groups import PermGroup
from .laws import LawStatus, TheoremReport, WordWitnessLine, non_law_witness
from .perms import Permutation
from .structure import nonsolvable_length
from .words import FreeWord, SymmetryLevel, enumerate_words


def trajectory(
    group: PermGroup, omega: int, word: FreeWord, tup: Sequence[Permutation]
) -> list[int]:
    """Images of omega under the word's prefixes, one letter at a time."""
    if not 0 <= omega < group.degree:
        raise ValueError(f"point {omega} out of range for degree {group.degree}")
    for g in tup:
        if not group.contains(g):
            raise ValueError("tuple entry outside the group")
    points = [omega]
    inverses: dict[int, Permutation] = {}
    current = omega
    for var, sign in word.letters:
        if sign == 1:
            current = tup[var - 1][current]
        else:
            inv = inverses.get(var)
            if inv is None:
                inv = inverses[var] = tup[var - 1].inverse()
            current = inv[current]
        points.append(current)
    return points


class SearchMode(enum.Enum):
    ANY_TUPLE = "any"
    SYLOW2 = "sylow2"


class SearchOutcome(enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"            # full tuple space scanned, nothing exists
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class SearchResult:
    outcome: SearchOutcome
    certificate: TrajectoryCertificate | None = None
    tuples_tried: int = 0
    conjugates_tried: int = 0


def _distinct_trajectory(word: FreeWord, tup, omega: int, degree: int) -> list[int] | None:
    seen = 1 << omega
    points = [omega]
    current = omega
    inverses: dict[int, Permutation] = {}
    for var, sign in word.letters:
        if sign == 1:
            current = tup[var - 1][current]
        else:
            inv = inverses.get(var)
            if inv is None:
                inv = inverses[var] = tup[var - 1].inverse()
            current = inv[current]
        bit = 1 << current
        if seen & bit:
            return None
        seen |= bit
        points.append(current)
    return points


def search_certificate(
    group: PermGroup,
    word: FreeWord,
    mode: SearchMode = SearchMode.ANY_TUPLE,
    omega: int | None = None,
    orbit: Sequence[int] | None = None,
    seed: int = 0,
    caps: Caps | None = None,
    random_budget: int = 4000,
    systematic_budget: int = 500_000,
) -> SearchResult:
    """Find a tuple giving pairwise-distinct trajectory points.

    With ``omega`` fixed the search is for that base point only;
    otherwise any point of ``orbit`` (default: all points) may serve.
    ``sylow2`` mode draws tuples from one Sylow 2-subgroup at a time,
    walking a deterministic stream of conjugates; the certificate then
    carries that subgroup's generators as a witness.  EXHAUSTED is
    only reported when a full tuple space was scanned.
    """
    caps = resolve(caps)
    if word.is_trivial():
        raise ValueError("trajectory search needs a nontrivial word")
    base_points = [omega] if omega is not None else list(orbit or range(group.degree))
    if mode is SearchMode.ANY_TUPLE:
        return _search_in_subgroup(group, group, word, base_points, seed, caps,
                                   random_budget, systematic_budget, witness=False)
    stream = _conjugate_stream(group, caps)
    result = SearchResult(SearchOutcome.BUDGET_EXHAUSTED)
    exhausted_everywhere = True
    for conj in stream.iter_subgroups():
        inner = _search_in_subgroup(group, conj, word, base_points, seed, caps,
                                    random_budget, systematic_budget, witness=True)
        result.conjugates_tried += 1
        result.tuples_tried += inner.tuples_tried
        if inner.outcome is SearchOutcome.FOUND:
            inner.tuples_tried = result.tuples_tried
            inner.conjugates_tried = result.conjugates_tried
            return inner
        if inner.outcome is not SearchOutcome.EXHAUSTED:
            exhausted_everywhere = False
    if exhausted_everywhere and stream.complete:
        result.outcome = SearchOutcome.EXHAUSTED
    return result


def _search_in_subgroup(
    group: PermGroup,
    sub: PermGroup,
    word: FreeWord,
    base_points: list[int],
    seed: int,
    caps: Caps,
    random_budget: int,
    systematic_budget: int,
    witness: bool,
) -> SearchResult:
    k = word.variable_count
    degree = group.degree
    tried = 0
    sub_order = sub.order()
    space = sub_order ** k
    # a base point fixed by the whole subgroup can never start a trajectory
    active_points = [p for p in base_points
                     if any(g[p] != p for g in sub.generators)]
    if not active_points:
        outcome = (SearchOutcome.EXHAUSTED if space <= systematic_budget
                   else SearchOutcome.BUDGET_EXHAUSTED)
        return SearchResult(outcome, None, 0)
    # random probes are only a win when the space dwarfs them; a small
    # space is cheaper to sweep deterministically right away
    if sub_order > 1 and space > 4 * random_budget:
        rng = Random(seed)
        for _ in range(random_budget):
            tup = tuple(sub.random_element(rng) for _ in range(k))
            tried += 1
            for p in active_points:
                points = _distinct_trajectory(word, tup, p, degree)
                if points is not None:
                    cert = TrajectoryCertificate(
                        word, p, tup, tuple(points),
                        tuple(sub.generators) if witness else None,
                        found_phase="random")
                    return SearchResult(SearchOutcome.FOUND, cert, tried)
    if space <= systematic_budget and sub_order <= caps.element_cap:
        elems = sub.elements(caps)
        for tup in itertools.product(elems, repeat=k):
            tried += 1
            for p in active_points:
                points = _distinct_trajectory(word, tup, p, degree)
                if points is not None:
                    cert = TrajectoryCertificate(
                        word, p, tup, tuple(points),
                        tuple(sub.generators) if witness else None,
                        found_phase="systematic")
                    return SearchResult(SearchOutcome.FOUND, cert, tried)
        return SearchResult(SearchOutcome.EXHAUSTED, None, tried)
    return SearchResult(SearchOutcome.BUDGET_EXHAUSTED, None, tried)


class _SylowConjugateStream:
    """Deterministic, lazily materialised stream of distinct conjugates
    of a group's Sylow 2-subgroup.

    Conjugating elements come from the group's chain-transversal
    odometer; at most ``sylow_conj_cap`` conjugates are materialised and
    at most ten times as many conjugators examined, so the stream always
    terminates even on groups far beyond enumeration caps.  Materialised
    subgroups (with their chains and element caches) are shared by every
    search over the same group, which is what keeps campaigns that probe
    many (point, word) pairs affordable.
    """

    def __init__(self, group: PermGroup, caps: Caps):
        self.group = group
        self.caps = caps
        self.subgroups: list[PermGroup] = []
        self._seen: set[tuple] = set()
        self._walker = group.chain.iter_elements()
        self._walked = 0
        self._walk_cap = caps.sylow_conj_cap * 10
        self._drained = False
        self._hit_cap = False
        self._syl = group.sylow(2, caps)

    @property
    def complete(self) -> bool:
        """True when every conjugate in the whole group has been seen."""
        return self._drained and not self._hit_cap

    def iter_subgroups(self) -> Iterator[PermGroup]:
        i = 0
        while True:
            while i >= len(self.subgroups):
                if not self._advance():
                    return
            yield self.subgroups[i]
            i += 1

    def _advance(self) -> bool:
        if self._drained:
            return False
        while True:
            if (len(self.subgroups) >= self.caps.sylow_conj_cap
                    or self._walked >= self._walk_cap):
                self._drained = True
                self._hit_cap = True
                return False
            t = next(self._walker, None)
            if t is None:
                self._drained = True
                return False
            self._walked += 1
            gens = tuple(sorted(g.conjugate(t) for g in self._syl.generators))
            key = tuple(g.images for g in gens)
            if key in self._seen:
                continue
            self._seen.add(key)
            sub = self.group.subgroup(
                list(gens), name=f"{self._syl.name or 'sylow'}^t{len(self.subgroups)}")
            self.subgroups.append(sub)
            return True


def _conjugate_stream(group: PermGroup, caps: Caps) -> _SylowConjugateStream:
    stream = getattr(group, "_sylow2_conjugate_stream", None)
    if stream is None or stream.caps is not caps:
        stream = _SylowConjugateStream(group, caps)
        group._sylow2_conjugate_stream = stream
    return stream


# -- campaign harnesses ----------------------------------------------------------


@dataclass
class TrajectoryCheckLine:
    word: FreeWord
    omega: int | None
    outcome: SearchOutcome
    certificate: TrajectoryCertificate | None


@dataclass
class TrajectoryReport:
    theorem: str
    group_name: str | None
    n: int
    mode: str
    status: str                    # PASS | FAIL | FAIL-TO-DECIDE
    lines: list[TrajectoryCheckLine] = field(default_factory=list)
    seed: int = 0
    detail: str = ""

    def certificates(self) -> list[TrajectoryCertificate]:
        return [l.certificate for l in self.lines if l.certificate is not None]


def check_trajectory_property(
    group: PermGroup,
    n: int,
    mode: SearchMode = SearchMode.ANY_TUPLE,
    omega: int | None = None,
    seed: int = 0,
    caps: Caps | None = None,
) -> TrajectoryReport:
    """For every canonical word of length exactly n (rename/invert
    symmetry), find some base point and tuple with n+1 distinct
    trajectory points.  With ``omega`` the base point is fixed instead.
    """
    caps = resolve(caps)
    report = TrajectoryReport("Pn", group.name, n, mode.value, "PASS", seed=seed)
    if n < 1:
        return report
    for word in enumerate_words(n, SymmetryLevel.RENAME_INVERT):
        result = search_certificate(group, word, mode, omega=omega, seed=seed, caps=caps)
        cert = result.certificate
        report.lines.append(TrajectoryCheckLine(word, omega, result.outcome, cert))
        if cert is not None:
            check = validate_certificate(cert, group, caps,
                                         require_sylow=(mode is SearchMode.SYLOW2))
            if not check.ok:
                raise PermlawError(f"searcher produced an invalid certificate: {check.problems}")
        elif result.outcome is SearchOutcome.EXHAUSTED:
            report.status = "FAIL"
            report.detail = f"no certificate exists for {word}"
        elif report.status == "PASS":
            report.status = "FAIL-TO-DECIDE"
            report.detail = f"budget exhausted on {word}"
    return report


def verify_theorem_c(
    group: PermGroup,
    caps: Caps | None = None,
    seed: int = 0,
    workers: int = 1,
) -> TrajectoryReport:
    """The strong form: for EVERY point and every canonical word of
    length exactly lambda, a Sylow-2-constrained certificate must exist
    (the Sylow subgroup may depend on the point).  A proven-empty search
    space is a FAIL and is surfaced loudly; a budget stop is
    FAIL-TO-DECIDE."""
    caps = resolve(caps)
    if not group.is_transitive():
        raise ValueError("the strong trajectory claim concerns transitive actions")
    lam = nonsolvable_length(group, caps)
    report = TrajectoryReport("C", group.name, lam, SearchMode.SYLOW2.value, "PASS", seed=seed)
    if lam < 1:
        return report
    words = list(enumerate_words(lam, SymmetryLevel.RENAME_INVERT))
    pairs = [(omega, word) for omega in range(group.degree) for word in words]
    if workers > 1:
        lines = _parallel_pairs(group, pairs, seed, caps, workers)
    else:
        lines = [_theorem_c_pair(group, omega, word, seed, caps) for omega, word in pairs]
    for line in lines:
        report.lines.append(line)
        if line.certificate is not None:
            check = validate_certificate(line.certificate, group, caps, require_sylow=True)
            if not check.ok:
                raise PermlawError(f"searcher produced an invalid certificate: {check.problems}")
        elif line.outcome is SearchOutcome.EXHAUSTED:
            report.status = "FAIL"
            report.detail = f"no certificate exists for point {line.omega}, word {line.word}"
        elif report.status == "PASS":
            report.status = "FAIL-TO-DECIDE"
            report.detail = f"budget exhausted at point {line.omega}, word {line.word}"
    return report


def _theorem_c_pair(group, omega, word, seed, caps) -> TrajectoryCheckLine:
    result = search_certificate(group, word, SearchMode.SYLOW2, omega=omega,
                                seed=seed, caps=caps)
    return TrajectoryCheckLine(word, omega, result.outcome, result.certificate)


_worker_state: dict = {}


def _init_pair_worker(group, seed, caps):
    _worker_state["group"] = group
    _worker_state["seed"] = seed
    _worker_state["caps"] = caps


def _pair_worker(pair):
    omega, word = pair
    return _theorem_c_pair(_worker_state["group"], omega, word,
                           _worker_state["seed"], _worker_state["caps"])


def _parallel_pairs(group, pairs, seed, caps, workers) -> list[TrajectoryCheckLine]:
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(
        max_workers=workers, initializer=_init_pair_worker, initargs=(group, seed, caps)
    ) as pool:
        return list(pool.map(_pair_worker, pairs))


def verify_theorem_b(
    group: PermGroup,
    caps: Caps | None = None,
    seed: int = 0,
    witness_budget: int = 50_000,
):
    """Every nontrivial word of length up to lambda has a non-vanishing
    tuple.  Witness search only (law symmetry is valid here since only
    non-law-ness is asserted); unresolved words give FAIL-TO-DECIDE."""
    caps = resolve(caps)
    lam = nonsolvable_length(group, caps)
    report = TheoremReport("B", group.name, lam, "PASS", seed=seed)
    for length in range(1, lam + 1):
        for word in enumerate_words(length, SymmetryLevel.FULL):
            probe = non_law_witness(group, word, budget=witness_budget, seed=seed, caps=caps)
            report.lines.append(WordWitnessLine(word, probe.status, probe.witness, probe.note))
            if probe.status is not LawStatus.NON_LAW_WITNESS:
                report.status = "FAIL-TO-DECIDE"
                report.detail = f"no witness within budget for {word}"
    return report

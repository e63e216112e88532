"""Trajectory certificates and their independent validator.

A certificate packages one verified instance of the distinct-trajectory
property: a word, a base point, a tuple, the resulting point
trajectory, and optionally the generators of a Sylow 2-subgroup that
contains the whole tuple.  The validator below shares no code with the
searcher: it re-evaluates every partial word from scratch, re-checks
distinctness, re-sifts tuple entries, and recomputes the 2-part of the
group order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .caps import Caps
from .groups import PermGroup
from .perms import Permutation
from .words import FreeWord, evaluate, format_word, parse_word


@dataclass
class TrajectoryCertificate:
    word: FreeWord
    omega: int
    tuple_entries: tuple[Permutation, ...]
    trajectory: tuple[int, ...]
    sylow_generators: tuple[Permutation, ...] | None = None
    found_phase: str = ""          # telemetry: which search phase found it

    def to_dict(self) -> dict:
        doc = {
            "word": format_word(self.word),
            "omega": self.omega,
            "tuple": [g.cycle_string() for g in self.tuple_entries],
            "degree": self.tuple_entries[0].degree if self.tuple_entries else None,
            "trajectory": list(self.trajectory),
            "found_phase": self.found_phase,
        }
        if self.sylow_generators is not None:
            doc["sylow_generators"] = [g.cycle_string() for g in self.sylow_generators]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "TrajectoryCertificate":
        degree = doc.get("degree")
        tup = tuple(Permutation.parse(s, degree) for s in doc["tuple"])
        sylow = None
        if "sylow_generators" in doc:
            sylow = tuple(Permutation.parse(s, degree) for s in doc["sylow_generators"])
        return cls(
            word=parse_word(doc["word"]),
            omega=doc["omega"],
            tuple_entries=tup,
            trajectory=tuple(doc["trajectory"]),
            sylow_generators=sylow,
            found_phase=doc.get("found_phase", ""),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1))

    @classmethod
    def load(cls, path: str | Path) -> "TrajectoryCertificate":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass
class ValidationResult:
    ok: bool
    problems: list[str] = field(default_factory=list)


def validate_certificate(
    cert: TrajectoryCertificate,
    group: PermGroup,
    caps: Caps | None = None,
    require_sylow: bool = False,
) -> ValidationResult:
    """Re-check a certificate from scratch, independently of the search.

    Checks: tuple entries lie in the group; the recorded trajectory is
    what the partial words actually do to the base point; its points are
    pairwise distinct; the full word moves the base point (so the word
    does not vanish on the tuple); and, when a Sylow witness is present,
    every tuple entry sifts into the witness subgroup, whose order is
    re-verified to be the exact 2-part of the group order.
    """
    problems: list[str] = []
    word = cert.word
    n = len(word)
    if word.is_trivial():
        problems.append("certificate for the trivial word is meaningless")
    if not 0 <= cert.omega < group.degree:
        problems.append(f"base point {cert.omega} out of range")
        return ValidationResult(False, problems)
    if len(cert.tuple_entries) < word.variable_count:
        problems.append("tuple shorter than the word's variable count")
        return ValidationResult(False, problems)
    for i, g in enumerate(cert.tuple_entries):
        if g.degree != group.degree:
            problems.append(f"tuple entry {i} has degree {g.degree} != {group.degree}")
            return ValidationResult(False, problems)
        if not group.contains(g):
            problems.append(f"tuple entry {i} is not a group element")
    # re-evaluate every partial word from scratch (no incremental reuse here)
    expected = []
    for i in range(n + 1):
        prefix = word.partial(i)
        if prefix.is_trivial():
            expected.append(cert.omega)
        else:
            expected.append(evaluate(prefix, cert.tuple_entries)[cert.omega])
    if tuple(expected) != tuple(cert.trajectory):
        problems.append(f"recorded trajectory {cert.trajectory} != recomputed {tuple(expected)}")
    if len(set(expected)) != n + 1:
        problems.append("trajectory points are not pairwise distinct")
    if not word.is_trivial() and evaluate(word, cert.tuple_entries).is_identity():
        problems.append("word evaluates to the identity on the tuple")
    if cert.sylow_generators is None:
        if require_sylow:
            problems.append("Sylow witness required but absent")
    else:
        witness = group.subgroup(cert.sylow_generators, name="sylow-witness")
        for g in witness.generators:
            if not group.contains(g):
                problems.append("Sylow witness generator is not a group element")
                break
        else:
            two_part = 1
            order = group.order()
            while order % 2 == 0:
                two_part *= 2
                order //= 2
            if witness.order() != two_part:
                problems.append(
                    f"witness order {witness.order()} is not the 2-part {two_part}")
            for i, g in enumerate(cert.tuple_entries):
                if not witness.contains(g):
                    problems.append(f"tuple entry {i} does not sift into the Sylow witness")
    return ValidationResult(not problems, problems)

"""permlaw: a permutation-group toolkit for nonsolvable length,
shortest laws, and independently checkable trajectory certificates."""

__version__ = "0.1.0"

from .caps import Caps, DEFAULT_CAPS
from .certificates import TrajectoryCertificate, validate_certificate
from .groups import PermGroup, QuotientMap, StructureCertificate, group_from_generators
from .laws import LawReport, LawStatus, is_law, non_law_witness, nu, verify_theorem_a
from .perms import Permutation
from .structure import (
    LCandidate,
    RSSeries,
    dihedral_class_check,
    frattini,
    is_rarefied,
    l_class_candidates,
    nonabelian_socle,
    nonsolvable_length,
    rs_series,
    solvable_radical,
    verbal_subgroup,
)
from .trajectories import (
    SearchMode,
    SearchOutcome,
    check_trajectory_property,
    search_certificate,
    trajectory,
    verify_theorem_b,
    verify_theorem_c,
)
from .words import FreeWord, SymmetryLevel, enumerate_words, evaluate, parse_word

__all__ = [
    "Caps",
    "DEFAULT_CAPS",
    "FreeWord",
    "LCandidate",
    "LawReport",
    "LawStatus",
    "PermGroup",
    "Permutation",
    "QuotientMap",
    "RSSeries",
    "SearchMode",
    "SearchOutcome",
    "StructureCertificate",
    "SymmetryLevel",
    "TrajectoryCertificate",
    "check_trajectory_property",
    "dihedral_class_check",
    "enumerate_words",
    "evaluate",
    "frattini",
    "group_from_generators",
    "is_law",
    "is_rarefied",
    "l_class_candidates",
    "non_law_witness",
    "nonabelian_socle",
    "nonsolvable_length",
    "nu",
    "parse_word",
    "rs_series",
    "search_certificate",
    "solvable_radical",
    "trajectory",
    "validate_certificate",
    "verbal_subgroup",
    "verify_theorem_a",
    "verify_theorem_b",
    "verify_theorem_c",
]

"""Trajectory certificates: search them, validate them independently,
and watch a mutated one get rejected.

The interesting subtlety: the Sylow 2-subgroup serving a base point can
depend on the point.  The first Sylow subgroup of the degree-5
alternating group fixes one point, so that point needs a conjugate.
"""

from permlaw import corpus
from permlaw.certificates import TrajectoryCertificate, validate_certificate
from permlaw.trajectories import SearchMode, search_certificate
from permlaw.words import parse_word


def main():
    a5 = corpus.alternating(5)
    word = parse_word("x1")
    print("Sylow 2-subgroup:", [g.cycle_string() for g in a5.sylow(2).generators])

    print("\n== one certificate per base point ==")
    for omega in range(5):
        result = search_certificate(a5, word, SearchMode.SYLOW2, omega=omega)
        cert = result.certificate
        print(f"point {omega}: tuple {[g.cycle_string() for g in cert.tuple_entries]}"
              f"  trajectory {list(cert.trajectory)}"
              f"  witness {[g.cycle_string() for g in cert.sylow_generators]}")

    print("\n== independent validation ==")
    result = search_certificate(a5, parse_word("x1 x2"), SearchMode.SYLOW2, omega=3)
    cert = result.certificate
    print("fresh certificate valid:",
          validate_certificate(cert, a5, require_sylow=True).ok)

    mutated = TrajectoryCertificate.from_dict(cert.to_dict())
    trajectory = list(mutated.trajectory)
    trajectory[-1] = trajectory[0]
    mutated.trajectory = tuple(trajectory)
    verdict = validate_certificate(mutated, a5)
    print("mutated certificate valid:", verdict.ok)
    for problem in verdict.problems:
        print("  rejected because:", problem)


if __name__ == "__main__":
    main()

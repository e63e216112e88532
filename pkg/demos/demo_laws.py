"""Shortest laws of small groups, and the witness campaign that checks
no word of length up to the nonsolvable length can be a law.
"""

from permlaw import corpus
from permlaw.laws import is_law, nu, verify_theorem_a
from permlaw.words import parse_word


def main():
    print("== shortest laws by exhaustive search ==")
    for group in (corpus.cyclic(2), corpus.cyclic(3), corpus.cyclic(4)):
        result = nu(group, 5)
        print(f"{group.name}: {result.describe()}")

    s3 = corpus.symmetric(3)
    result = nu(s3, 4)
    print(f"{s3.name}: {result.describe()}  (its exponent gives a law of length 6)")
    print("  x1^6 on s3:", is_law(s3, parse_word("x1 x1 x1 x1 x1 x1")).status.value)

    print("\n== no short word is a law ==")
    for group in (corpus.symmetric(4), corpus.alternating(5),
                  corpus.wreath(corpus.alternating(5), corpus.cyclic(2))):
        report = verify_theorem_a(group)
        words = ", ".join(str(line.word) for line in report.lines) or "none needed"
        print(f"{group.name}: lambda={report.lamda} -> {report.status} (words: {words})")


if __name__ == "__main__":
    main()

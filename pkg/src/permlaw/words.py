"""Reduced words in the free group on x1, x2, ...

A word is a sequence of letters (variable index >= 1, sign +-1) with no
adjacent cancelling pair.  Words evaluate on tuples of permutations by
left-to-right substitution, matching the right-action convention of the
rest of the toolkit.

Two symmetry levels drive enumeration:

* RENAME_INVERT -- variables renumbered by first occurrence, each
  variable's first occurrence positive.  Safe for trajectory searches:
  renaming permutes the tuple and inverting a variable replaces its
  entry by its inverse, both of which preserve the evaluated prefix
  sequence pointwise.

* FULL -- additionally minimise over cyclic shifts of the cyclically
  reduced core and over word inversion.  Safe for law detection only:
  a cyclic shift is conjugate to the original word, so it vanishes on
  the same tuples, but its prefix trajectory is a different sequence.
  Trajectory searches must therefore never enumerate at FULL.

Enumeration order (depth-first, letters ordered by variable index with
the positive sign first) is a stable, documented contract.
"""

from __future__ import annotations

import enum
from typing import Iterator, Sequence

from .errors import WordSyntaxError
from .perms import Permutation

Letter = tuple[int, int]


class SymmetryLevel(enum.Enum):
    RENAME_INVERT = "rename-invert"
    FULL = "full"


class FreeWord:
    """A reduced word; construction reduces its letter sequence."""

    __slots__ = ("letters",)

    def __init__(self, letters: Sequence[Letter] = ()):
        stack: list[Letter] = []
        for var, sign in letters:
            if var < 1 or sign not in (1, -1):
                raise ValueError(f"bad letter ({var}, {sign})")
            if stack and stack[-1][0] == var and stack[-1][1] == -sign:
                stack.pop()
            else:
                stack.append((var, sign))
        object.__setattr__(self, "letters", tuple(stack))

    # -- basic structure ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def variable_count(self) -> int:
        return max((v for v, _ in self.letters), default=0)

    def is_trivial(self) -> bool:
        return not self.letters

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((v, -s) for v, s in reversed(self.letters)))

    __invert__ = inverse

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "FreeWord") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return tuple((v, 0 if s > 0 else 1) for v, s in self.letters)

    def __repr__(self) -> str:
        return f"FreeWord({self})"

    def __str__(self) -> str:
        return format_word(self)

    def __reduce__(self):
        return (FreeWord, (self.letters,))

    # -- prefixes ------------------------------------------------------------

    def partial_words(self) -> list["FreeWord"]:
        """All prefixes, from the empty word up to the word itself."""
        return [FreeWord(self.letters[:i]) for i in range(len(self.letters) + 1)]

    def partial(self, i: int) -> "FreeWord":
        return FreeWord(self.letters[:i])

    def tilde(self, j: int) -> "FreeWord":
        """Prefix-inverse conjugating word for the j-th letter (1-based):
        the inverse of the first j letters when the j-th sign is negative,
        of the first j-1 letters when it is positive."""
        if not 1 <= j <= len(self.letters):
            raise ValueError(f"letter index {j} out of range 1..{len(self.letters)}")
        sign = self.letters[j - 1][1]
        cut = j if sign == -1 else j - 1
        return FreeWord(self.letters[:cut]).inverse()

    # -- canonical forms -------------------------------------------------------

    def rename_invert_canonical(self) -> "FreeWord":
        """Least orbit member under variable renaming and variable inversion:
        variables renumbered by first occurrence, first occurrences positive."""
        mapping: dict[int, Letter] = {}
        out = []
        for var, sign in self.letters:
            if var not in mapping:
                mapping[var] = (len(mapping) + 1, sign)
            new_var, first_sign = mapping[var]
            out.append((new_var, sign * first_sign))
        return FreeWord(out)

    def cyclically_reduced(self) -> "FreeWord":
        letters = list(self.letters)
        while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        return FreeWord(letters)

    def is_cyclically_reduced(self) -> bool:
        ls = self.letters
        return len(ls) < 2 or not (ls[0][0] == ls[-1][0] and ls[0][1] == -ls[-1][1])

    def full_canonical(self) -> "FreeWord":
        """Least member over cyclic shifts of the cyclic core, word
        inversion, and renaming/inversion of variables."""
        core = self.cyclically_reduced()
        if core.is_trivial():
            return core
        candidates = []
        for word in (core, core.inverse()):
            ls = word.letters
            for shift in range(len(ls)):
                rotated = FreeWord(ls[shift:] + ls[:shift])
                candidates.append(rotated.rename_invert_canonical())
        return min(candidates, key=FreeWord.sort_key)

    def canonical(self, level: SymmetryLevel) -> "FreeWord":
        if level is SymmetryLevel.RENAME_INVERT:
            return self.rename_invert_canonical()
        return self.full_canonical()


# -- parsing / formatting -----------------------------------------------------


def parse_word(text: str) -> FreeWord:
    """Parse whitespace-separated tokens ``x<i>`` / ``x<i>^-1``; ``1`` is
    the empty word."""
    stripped = text.strip()
    if stripped == "1":
        return FreeWord()
    letters = []
    for token in stripped.split():
        body, sign = token, 1
        if "^" in token:
            body, _, power = token.partition("^")
            if power != "-1":
                raise WordSyntaxError(f"only ^-1 powers are supported: {token!r}")
            sign = -1
        if not body.startswith("x"):
            raise WordSyntaxError(f"letter must look like x<i>: {token!r}")
        try:
            var = int(body[1:])
        except ValueError as exc:
            raise WordSyntaxError(f"bad variable index in {token!r}") from exc
        if var < 1:
            raise WordSyntaxError(f"variable indices start at 1: {token!r}")
        letters.append((var, sign))
    return FreeWord(letters)


def format_word(w: FreeWord) -> str:
    if w.is_trivial():
        return "1"
    return " ".join(f"x{v}" if s > 0 else f"x{v}^-1" for v, s in w.letters)


# -- evaluation ----------------------------------------------------------------


def evaluate(word: FreeWord, tup: Sequence[Permutation]) -> Permutation:
    """Substitute tup[i-1] for xi and multiply left-to-right."""
    if word.variable_count > len(tup):
        raise ValueError(
            f"word uses {word.variable_count} variables, tuple has {len(tup)}"
        )
    if not tup:
        raise ValueError("cannot evaluate against an empty tuple")
    result = Permutation.identity(tup[0].degree)
    inverses: dict[int, Permutation] = {}
    for var, sign in word.letters:
        if sign == 1:
            result = result * tup[var - 1]
        else:
            inv = inverses.get(var)
            if inv is None:
                inv = inverses[var] = tup[var - 1].inverse()
            result = result * inv
    return result


def conjugator_decomposition(
    word: FreeWord, g_tuple: Sequence[Permutation], b_tuple: Sequence[Permutation]
) -> list[Permutation]:
    """Factor the perturbation of a word value by a componentwise left
    multiplier.

    Writing the word as letters y_1..y_n, returns (a_1..a_n) where a_j is
    the j-th variable's multiplier entry conjugated by the evaluated
    prefix-inverse word ``tilde(j)``, and checks the exact identity

        word(b*g) == a_1^e_1 ... a_n^e_n * word(g)

    with b*g the componentwise product.  The identity holds in the free
    group, so a violation is an implementation bug and raises
    AssertionError; callers that want the product to stay inside a
    normal subgroup must pick the multiplier entries from one.
    """
    if word.is_trivial():
        return []
    k = word.variable_count
    if len(b_tuple) < k or len(g_tuple) < k:
        raise ValueError("tuples shorter than the word's variable count")
    factors = []
    for j, (var, _sign) in enumerate(word.letters, start=1):
        conj = evaluate(word.tilde(j), g_tuple)
        factors.append(b_tuple[var - 1].conjugate(conj))
    mixed = tuple(b * g for b, g in zip(b_tuple, g_tuple))
    lhs = evaluate(word, mixed)
    rhs = Permutation.identity(g_tuple[0].degree)
    for a, (_var, sign) in zip(factors, word.letters):
        rhs = rhs * (a if sign == 1 else a.inverse())
    rhs = rhs * evaluate(word, g_tuple)
    if lhs != rhs:
        raise AssertionError("conjugator decomposition identity failed; this is a bug")
    return factors


# -- enumeration -----------------------------------------------------------------


def enumerate_words(n: int, level: SymmetryLevel) -> Iterator[FreeWord]:
    """One representative per canonical-form orbit of reduced words of
    length n (cyclically reduced words at FULL), in depth-first
    lexicographic order.  This order is part of the stable contract.
    """
    if n < 1:
        raise ValueError("word length must be at least 1")
    for word in _dfs_rename_invert(n):
        if level is SymmetryLevel.RENAME_INVERT:
            yield word
        elif word.is_cyclically_reduced() and word.full_canonical() == word:
            yield word


def _dfs_rename_invert(n: int) -> Iterator[FreeWord]:
    # canonical prefixes only: new variables appear in order and positive,
    # so a prefix that breaks the pattern can never extend to a canonical word
    letters: list[Letter] = []

    def rec(max_var: int) -> Iterator[FreeWord]:
        if len(letters) == n:
            yield FreeWord(letters)
            return
        prev = letters[-1] if letters else None
        for var in range(1, max_var + 2):
            signs = (1,) if var == max_var + 1 else (1, -1)
            for sign in signs:
                if prev is not None and prev[0] == var and prev[1] == -sign:
                    continue  # would cancel
                letters.append((var, sign))
                yield from rec(max(max_var, var))
                letters.pop()

    yield from rec(0)


def count_words(n: int, level: SymmetryLevel) -> int:
    return sum(1 for _ in enumerate_words(n, level))

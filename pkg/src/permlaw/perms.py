"""Permutations of {0..degree-1}.

The action convention is on the *right* throughout the toolkit: a point
moves as ``omega ^ g`` read left-to-right, and products compose
left-to-right, so ``omega @ (g * h) == (omega @ g) @ h``.  In code the
image of a point is ``g[omega]`` and ``(g * h)[omega] == h[g[omega]]``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

from .errors import DegreeMismatch, InvalidPermutation

_CYCLE_RE = re.compile(r"\(\s*((?:\d+[\s,]*)*)\)")


class Permutation:
    """An immutable bijection on {0..degree-1}, stored as an image tuple.

    ``images[i]`` is the image of point ``i``.  Permutations are hashable
    and totally ordered by their image tuples, which makes every search
    in the toolkit reproducible.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(images)
        n = len(imgs)
        seen = [False] * n
        for x in imgs:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise InvalidPermutation(f"not a bijection on 0..{n - 1}: {imgs}")
            seen[x] = True
        object.__setattr__(self, "images", imgs)

    # -- construction ------------------------------------------------

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise InvalidPermutation(f"repeated point in cycle {tuple(cycle)}")
            for a, b in zip(cycle, cycle[1:]):
                if not 0 <= a < degree:
                    raise InvalidPermutation(f"point {a} out of range for degree {degree}")
                images[a] = b
            if cycle:
                if not 0 <= cycle[-1] < degree:
                    raise InvalidPermutation(f"point {cycle[-1]} out of range for degree {degree}")
                images[cycle[-1]] = cycle[0]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse cycle notation like ``(0 1 2)(3 4)``; whitespace/commas are free.

        ``()`` is the identity.  Without an explicit degree the smallest
        degree covering all mentioned points is used.
        """
        stripped = text.strip()
        consumed = _CYCLE_RE.sub("", stripped).strip()
        if consumed:
            raise InvalidPermutation(f"unparseable permutation text: {text!r}")
        cycles = []
        for m in _CYCLE_RE.finditer(stripped):
            body = m.group(1).strip()
            if body:
                cycles.append([int(tok) for tok in re.split(r"[\s,]+", body)])
        top = max((max(c) for c in cycles if c), default=-1)
        if degree is None:
            degree = top + 1
        elif top >= degree:
            raise InvalidPermutation(f"point {top} out of range for degree {degree}")
        return cls.from_cycles(degree, cycles)

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        # internal fast path: caller guarantees a valid image tuple
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    # -- the group operations ----------------------------------------

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # apply self first, then other (right-action composition)
        a, b = self.images, other.images
        if len(a) != len(b):
            raise DegreeMismatch(f"degree {len(a)} vs {len(b)}")
        return Permutation._raw(tuple(b[x] for x in a))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Return self**g  ==  g^-1 * self * g."""
        return g.inverse() * self * g

    # -- structure ----------------------------------------------------

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def min_moved_point(self) -> int | None:
        for i, x in enumerate(self.images):
            if i != x:
                return i
        return None

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.moved_points() else 1

    def sign(self) -> int:
        odd_transpositions = sum(len(c) - 1 for c in self.cycles())
        return -1 if odd_transpositions % 2 else 1

    def cycle_string(self) -> str:
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    # -- protocol plumbing --------------------------------------------

    def image_of(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __le__(self, other: "Permutation") -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation[{self.degree}] {self.cycle_string()}"

    def __reduce__(self):
        return (_rebuild_perm, (self.images,))


def _rebuild_perm(images: tuple[int, ...]) -> Permutation:
    return Permutation._raw(images)

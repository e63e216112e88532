"""Deterministic stabilizer chains (Schreier-Sims).

The chain is generic over an element protocol -- anything with
``image_of``, ``__mul__``, ``inverse`` and ``is_identity`` -- so the
same engine serves plain permutations and "shadowed" permutations that
drag a preimage element along (used to pull subgroups back through
coset actions).

Everything here is deterministic: no randomised sifting, FIFO orbit
discovery with generators applied in list order, and each new base
point is the least point moved by the element that forces it.  Chains
built twice from the same generator list are identical.
"""

from __future__ import annotations

from typing import Iterator, Protocol, Sequence, TypeVar

from .perms import Permutation


class ChainElement(Protocol):
    def image_of(self, point: int) -> int: ...
    def inverse(self): ...
    def is_identity(self) -> bool: ...
    def __mul__(self, other): ...


E = TypeVar("E", bound="ChainElement")


class ShadowPerm:
    """A permutation paired with a shadow element multiplied in lockstep.

    The chain only ever looks at the action part, so membership and
    base points are decided in the image group while the shadow keeps
    track of a preimage under some homomorphism.
    """

    __slots__ = ("action", "shadow")

    def __init__(self, action: Permutation, shadow: Permutation):
        self.action = action
        self.shadow = shadow

    def image_of(self, point: int) -> int:
        return self.action.images[point]

    def inverse(self) -> "ShadowPerm":
        return ShadowPerm(self.action.inverse(), self.shadow.inverse())

    def is_identity(self) -> bool:
        return self.action.is_identity()

    def __mul__(self, other: "ShadowPerm") -> "ShadowPerm":
        return ShadowPerm(self.action * other.action, self.shadow * other.shadow)

    def __repr__(self) -> str:
        return f"ShadowPerm({self.action.cycle_string()} ~ {self.shadow.cycle_string()})"


class _Level:
    __slots__ = ("base_point", "gens", "transversal", "orbit_order")

    def __init__(self, base_point: int, identity):
        self.base_point = base_point
        self.gens: list = []          # generators first inserted at this level
        self.transversal = {base_point: identity}
        self.orbit_order = [base_point]


class StabilizerChain:
    """Base points with transversals giving exact order and membership.

    Level i holds the part of a strong generating set first needed at
    depth i; the group at level i is generated by the generators stored
    at levels >= i, and its transversal is always rebuilt from that full
    set.
    """

    def __init__(self, degree: int, identity, generators: Sequence = (), base_hint: int | None = None):
        self.degree = degree
        self.identity = identity
        self.levels: list[_Level] = []
        if base_hint is not None:
            self.levels.append(_Level(base_hint, identity))
        for g in generators:
            self.extend(g)

    @classmethod
    def with_prescribed_base(
        cls, degree: int, identity, base_points: Sequence[int], generators: Sequence = ()
    ) -> "StabilizerChain":
        """Chain whose base is exactly `base_points`, singleton orbits kept.

        Used for coset canonicalisation, where level i must stabilise all
        of points 0..i-1, not merely the earlier base points.
        """
        chain = cls(degree, identity)
        chain.levels = [_Level(p, identity) for p in base_points]
        for g in generators:
            chain.extend(g)
        return chain

    # -- queries -------------------------------------------------------

    def order(self) -> int:
        n = 1
        for level in self.levels:
            n *= len(level.transversal)
        return n

    def sift(self, g):
        """Reduce g by transversal elements; identity residue means membership."""
        for level in self.levels:
            p = g.image_of(level.base_point)
            rep = level.transversal.get(p)
            if rep is None:
                return g
            g = g * rep.inverse()
        return g

    def contains(self, g) -> bool:
        return self.sift(g).is_identity()

    def base(self) -> list[int]:
        return [level.base_point for level in self.levels]

    def strong_generators(self) -> list:
        out = []
        for level in self.levels:
            out.extend(level.gens)
        return out

    # -- construction ----------------------------------------------------

    def extend(self, g) -> None:
        """Add one generator, restoring chain completeness."""
        residue = self.sift(g)
        if residue.is_identity():
            return
        self._insert(0, residue)

    def _insert(self, i: int, g) -> None:
        # pre: g fixes the base points of levels < i and is not the identity
        if i == len(self.levels):
            self.levels.append(_Level(self._min_moved(g), self.identity))
        level = self.levels[i]
        if g.image_of(level.base_point) == level.base_point:
            self._insert(i + 1, g)
        else:
            level.gens.append(g)
        self._rebuild_transversal(i)
        # every Schreier generator of this level must sift away below it
        gens = self._gens_at_or_below(i)
        for p in list(level.orbit_order):
            rep = level.transversal[p]
            for gen in gens:
                q = gen.image_of(p)
                schreier = rep * gen * level.transversal[q].inverse()
                residue = self._sift_from(i + 1, schreier)
                if not residue.is_identity():
                    self._insert(i + 1, residue)

    def _sift_from(self, i: int, g):
        for level in self.levels[i:]:
            p = g.image_of(level.base_point)
            rep = level.transversal.get(p)
            if rep is None:
                return g
            g = g * rep.inverse()
        return g

    def _gens_at_or_below(self, i: int) -> list:
        out = []
        for level in self.levels[i:]:
            out.extend(level.gens)
        return out

    def _rebuild_transversal(self, i: int) -> None:
        level = self.levels[i]
        gens = self._gens_at_or_below(i)
        level.transversal = {level.base_point: self.identity}
        level.orbit_order = [level.base_point]
        k = 0
        while k < len(level.orbit_order):
            p = level.orbit_order[k]
            k += 1
            rep = level.transversal[p]
            for gen in gens:
                q = gen.image_of(p)
                if q not in level.transversal:
                    level.transversal[q] = rep * gen
                    level.orbit_order.append(q)

    def _min_moved(self, g) -> int:
        for point in range(self.degree):
            if g.image_of(point) != point:
                return point
        raise AssertionError("identity cannot seed a level")

    def verify(self) -> None:
        """Deterministic completeness pass: every Schreier generator of
        every level must sift to the identity.  Raises AssertionError on
        failure; meant for tests and paranoid callers."""
        for i, level in enumerate(self.levels):
            gens = self._gens_at_or_below(i)
            for p in level.orbit_order:
                rep = level.transversal[p]
                for gen in gens:
                    q = gen.image_of(p)
                    schreier = rep * gen * level.transversal[q].inverse()
                    if not self._sift_from(i + 1, schreier).is_identity():
                        raise AssertionError(f"incomplete chain at level {i}")

    # -- element streams -------------------------------------------------

    def iter_elements(self) -> Iterator:
        """All group elements in transversal-odometer order.

        The first element is the identity.  The stream is lazy, so it is
        usable on groups far beyond any enumeration cap; consumers are
        expected to take only a bounded prefix.
        """
        return self._iter_from(0)

    def _iter_from(self, level_idx: int) -> Iterator:
        if level_idx == len(self.levels):
            yield self.identity
            return
        level = self.levels[level_idx]
        points = [level.base_point]
        points += sorted(p for p in level.transversal if p != level.base_point)
        for rest in self._iter_from(level_idx + 1):
            for p in points:
                yield rest * level.transversal[p]

    def transversal_decomposition(self, g) -> list | None:
        """Transversal elements [t_1..t_k] with g == t_k * ... * t_1.

        Returns None if g is not a member.  Only the action part of g is
        inspected, so a plain permutation can be decomposed against a
        shadowed chain -- that is how preimages are produced.
        """
        parts = []
        for level in self.levels:
            p = g.image_of(level.base_point)
            rep = level.transversal.get(p)
            if rep is None:
                return None
            parts.append(rep)
            g = g * _action_inverse(rep)
        if not g.is_identity():
            return None
        return parts


def _action_inverse(elem):
    """Inverse of the *action* of a chain element, as a plain Permutation."""
    if isinstance(elem, ShadowPerm):
        return elem.action.inverse()
    return elem.inverse()

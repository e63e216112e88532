"""Dense multiplication-table machinery for small groups.

Subgroup-lattice enumeration (for Frattini subgroups) and exhaustive
dihedral-subgroup scans work on element indices against a precomputed
multiplication table.  The table is quadratic in the group order, so
this is deliberately desk-scale; callers guard with caps.
"""

from __future__ import annotations

from .caps import Caps, resolve
from .errors import CapExceeded
from .groups import PermGroup

_TABLE_LIMIT = 3000  # n^2 ints; above this the dense table is unreasonable


class SmallGroupTable:
    """Element indexing plus full multiplication/inverse tables."""

    def __init__(self, group: PermGroup, caps: Caps | None = None):
        caps = resolve(caps)
        n = group.order()
        if n > _TABLE_LIMIT:
            raise CapExceeded("table", _TABLE_LIMIT, n, "dense multiplication table")
        self.group = group
        self.elements = group.elements(caps)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.mult = [
            [self.index[a * b] for b in self.elements] for a in self.elements
        ]
        self.inv = [self.index[e.inverse()] for e in self.elements]
        self.orders = [e.order() for e in self.elements]
        self.identity_idx = self.index[group.identity]

    def __len__(self) -> int:
        return len(self.elements)

    def conjugate_idx(self, x: int, g: int) -> int:
        return self.mult[self.mult[self.inv[g]][x]][g]

    def closure(self, gens: tuple[int, ...]) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        elems = {self.identity_idx}
        frontier = [self.identity_idx]
        while frontier:
            nxt = []
            for x in frontier:
                row = self.mult[x]
                for g in gens:
                    y = row[g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def cyclic_subgroup(self, x: int) -> frozenset[int]:
        out = {self.identity_idx}
        y = x
        while y != self.identity_idx:
            out.add(y)
            y = self.mult[y][x]
        return frozenset(out)

    def subgroup_from_indices(self, idxs: frozenset[int]) -> PermGroup:
        gens = [self.elements[i] for i in sorted(idxs) if i != self.identity_idx]
        return self.group.subgroup(gens)


def all_subgroups(table: SmallGroupTable) -> list[frozenset[int]]:
    """Every subgroup, as the join closure of the cyclic subgroups.

    Each subgroup is the join of the cyclic subgroups of its elements,
    so closing the cyclic subgroups under join-with-cyclic reaches the
    whole lattice.  A small generating set is carried per subgroup to
    keep joins cheap.  Exponential in the worst case; guarded by the
    caller's cap.
    """
    ident = frozenset({table.identity_idx})
    atoms: dict[frozenset[int], int] = {}
    for i, order in enumerate(table.orders):
        if order > 1:
            atoms.setdefault(table.cyclic_subgroup(i), i)
    atom_list = sorted(atoms.items(), key=lambda kv: sorted(kv[0]))
    known: dict[frozenset[int], tuple[int, ...]] = {ident: ()}
    for sub, gen in atom_list:
        known.setdefault(sub, (gen,))
    worklist = [s for s, _ in atom_list]
    while worklist:
        sub = worklist.pop()
        gens = known[sub]
        for atom, gen in atom_list:
            if atom <= sub:
                continue
            joined = table.closure(gens + (gen,))
            if joined not in known:
                known[joined] = gens + (gen,)
                worklist.append(joined)
    return sorted(known, key=lambda s: (len(s), sorted(s)))


def maximal_subgroups(table: SmallGroupTable) -> list[frozenset[int]]:
    subs = all_subgroups(table)
    whole = frozenset(range(len(table)))
    proper = [s for s in subs if s != whole]
    maximal = []
    for s in proper:
        if not any(s < t for t in proper if len(t) > len(s)):
            maximal.append(s)
    return maximal


def frattini_from_table(table: SmallGroupTable) -> PermGroup:
    maxes = maximal_subgroups(table)
    if not maxes:  # trivial group: empty intersection convention is the group
        return table.group.subgroup([])
    meet = frozenset.intersection(*maxes)
    return table.subgroup_from_indices(meet)

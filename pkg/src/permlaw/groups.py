"""Permutation groups: membership, order, closures, series, classes,
coset actions and Sylow subgroups.

A :class:`PermGroup` is immutable after construction; the stabilizer
chain and element/class caches are built lazily on first use and then
shared by concurrent readers.  Element enumeration order (breadth-first
over generators with a lexicographic tie-break on image tuples) is a
stable contract: every downstream search iterates it, which is what
makes reports reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Iterable, Sequence

from .caps import Caps, resolve
from .chain import ShadowPerm, StabilizerChain
from .errors import (
    CapExceeded,
    CertificateError,
    DegreeMismatch,
    NotAMember,
    NotASubgroup,
)
from .perms import Permutation


@dataclass(frozen=True)
class StructureCertificate:
    """Construction-time structure data for groups too large to enumerate.

    kind is one of ``simple-nonabelian``, ``direct-product``,
    ``imprimitive-wreath``.  For a wreath, ``parts`` is (base component,
    top group), ``base_generators`` generate the full base (one copy of
    the component per block) and ``block_size`` is the component degree.
    For a direct product, ``parts`` are the factors in point order.
    Certificates are re-verified at construction and again at load time;
    they are never trusted blindly.
    """

    kind: str
    parts: tuple["PermGroup", ...] = ()
    base_generators: tuple[Permutation, ...] = ()
    block_size: int = 0
    part_names: tuple[str, ...] = ()


class PermGroup:
    """A finite permutation group given by generators on {0..degree-1}."""

    def __init__(
        self,
        degree: int,
        generators: Sequence[Permutation],
        name: str | None = None,
        certificate: StructureCertificate | None = None,
    ):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        gens = []
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != group degree {degree}")
            if not g.is_identity():
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self.certificate = certificate
        self._chain: StabilizerChain | None = None
        self._elements: tuple[Permutation, ...] | None = None
        self._classes: list["ConjugacyClass"] | None = None
        self._sampler: list[list[Permutation]] | None = None
        self._sylow_cache: dict[int, "PermGroup"] = {}

    # -- basics ---------------------------------------------------------

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            hint = None
            moved = [p for g in self.generators for p in (g.min_moved_point(),) if p is not None]
            if moved:
                hint = min(moved)
            self._chain = StabilizerChain(self.degree, self.identity, self.generators, base_hint=hint)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(f"element degree {g.degree} != group degree {self.degree}")
        return self.chain.contains(g)

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def is_trivial(self) -> bool:
        return not self.generators

    def subgroup(self, gens: Iterable[Permutation], name: str | None = None) -> "PermGroup":
        return PermGroup(self.degree, list(gens), name=name)

    def contains_subgroup(self, other: "PermGroup") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_group_as(self, other: "PermGroup") -> bool:
        """Equality as subgroups of the symmetric group (not identity)."""
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.contains_subgroup(other)
        )

    def is_normal_subgroup(self, sub: "PermGroup") -> bool:
        if not self.contains_subgroup(sub):
            return False
        return all(
            sub.contains(h.conjugate(g))
            for g in self.generators
            for h in sub.generators
        )

    def random_element(self, rng: Random) -> Permutation:
        """Uniform element: one transversal representative per chain level.

        Factors multiply deepest-level first, matching the unique
        transversal decomposition, so the result is exactly uniform.
        """
        if self._sampler is None:
            self._sampler = [
                [level.transversal[p] for p in sorted(level.transversal)]
                for level in reversed(self.chain.levels)
            ]
        g = self.identity
        for reps in self._sampler:
            g = g * rng.choice(reps)
        return g

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    def __reduce__(self):
        return (
            _rebuild_group,
            (self.degree, self.generators, self.name, self.certificate),
        )

    # -- enumeration ------------------------------------------------------

    def elements(self, caps: Caps | None = None) -> tuple[Permutation, ...]:
        """All elements, breadth-first over generators, lexicographic ties.

        The order is deterministic and is the element order used by every
        exhaustive scan in the toolkit.
        """
        if self._elements is not None:
            return self._elements
        caps = resolve(caps)
        n = self.order()
        if n > caps.element_cap:
            raise CapExceeded("element_cap", caps.element_cap, n, "element enumeration")
        out = [self.identity]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            layer = set()
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        layer.add(y)
            frontier = sorted(layer)
            out.extend(frontier)
        self._elements = tuple(out)
        return self._elements

    def conjugacy_classes(self, caps: Caps | None = None) -> list["ConjugacyClass"]:
        """One class per orbit of the conjugation action, deterministic reps.

        Representatives appear in element-enumeration order, so "ascending
        element order" over class representatives is just list order here.
        """
        if self._classes is not None:
            return self._classes
        elems = self.elements(caps)
        index = {e: i for i, e in enumerate(elems)}
        assigned = [False] * len(elems)
        classes = []
        for i, rep in enumerate(elems):
            if assigned[i]:
                continue
            members = [rep]
            assigned[i] = True
            queue = [rep]
            while queue:
                x = queue.pop()
                for g in self.generators:
                    y = x.conjugate(g)
                    j = index[y]
                    if not assigned[j]:
                        assigned[j] = True
                        members.append(y)
                        queue.append(y)
            classes.append(ConjugacyClass(rep=rep, size=len(members), members=tuple(members)))
        self._classes = classes
        return classes

    def conjugacy_class_reps(self, caps: Caps | None = None) -> tuple[Permutation, ...]:
        return tuple(c.rep for c in self.conjugacy_classes(caps))

    # -- orbits ----------------------------------------------------------

    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            i = 0
            while i < len(orbit):
                p = orbit[i]
                i += 1
                for g in self.generators:
                    q = g[p]
                    if not seen[q]:
                        seen[q] = True
                        orbit.append(q)
            out.append(tuple(sorted(orbit)))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    # -- closures and series ----------------------------------------------

    def normal_closure(self, xs: Sequence[Permutation], name: str | None = None) -> "PermGroup":
        """Smallest normal subgroup of self containing xs.

        Conjugates current generators by group generators, sifting against
        the growing chain until closed.
        """
        for x in xs:
            if not self.contains(x):
                raise NotAMember(f"{x!r} is not in the ambient group")
        closure_gens: list[Permutation] = []
        chain = StabilizerChain(self.degree, self.identity)
        queue = [x for x in xs if not x.is_identity()]
        while queue:
            x = queue.pop(0)
            if chain.contains(x):
                continue
            chain.extend(x)
            closure_gens.append(x)
            for g in self.generators:
                queue.append(x.conjugate(g))
        return self.subgroup(closure_gens, name=name)

    def derived_subgroup(self) -> "PermGroup":
        commutators = [
            a.inverse() * b.inverse() * a * b
            for i, a in enumerate(self.generators)
            for b in self.generators[i + 1:]
        ]
        return self.normal_closure(commutators)

    def derived_series(self) -> list["PermGroup"]:
        """[G, G', G'', ...]; the last term is repeated once when the series
        stabilises on a nontrivial perfect group, so a glance at the orders
        shows whether it stopped by reaching 1 or by stabilising."""
        series = [self]
        while True:
            nxt = series[-1].derived_subgroup()
            series.append(nxt)
            if nxt.is_trivial() or nxt.order() == series[-2].order():
                return series

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].is_trivial()

    def is_perfect(self) -> bool:
        return self.derived_subgroup().order() == self.order()

    # -- coset action -------------------------------------------------------

    def coset_action(self, sub: "PermGroup", caps: Caps | None = None) -> "QuotientMap":
        return QuotientMap.build(self, sub, caps)

    def quotient_by(self, normal_sub: "PermGroup", caps: Caps | None = None) -> "QuotientMap":
        """Coset action by a normal subgroup; the image is the quotient."""
        return QuotientMap.build(self, normal_sub, caps)

    # -- Sylow subgroups -----------------------------------------------------

    def sylow(self, p: int, caps: Caps | None = None) -> "PermGroup":
        """A Sylow p-subgroup (full p-part of the order).

        Small groups grow a p-subgroup by scanning, in element order, for
        p-elements that normalise the current subgroup and extend it.
        Certified wreaths and direct products are assembled componentwise.
        """
        caps = resolve(caps)
        n = self.order()
        if n % p != 0:
            raise ValueError(f"{p} does not divide the group order {n}")
        cached = self._sylow_cache.get(p)
        if cached is not None:
            return cached
        target = _p_part(n, p)
        cert = self.certificate
        if n <= caps.element_cap:
            result = self._sylow_small(p, target, caps)
        elif cert is not None and cert.kind == "imprimitive-wreath":
            result = self._sylow_wreath(p, cert, caps)
        elif cert is not None and cert.kind == "direct-product":
            result = self._sylow_direct(p, cert, caps)
        else:
            raise CapExceeded(
                "element_cap", caps.element_cap, n,
                "Sylow subgroup needs enumeration or a wreath/direct-product certificate",
            )
        self._sylow_cache[p] = result
        return result

    def _sylow_small(self, p: int, target: int, caps: Caps) -> "PermGroup":
        elems = self.elements(caps)
        gens: list[Permutation] = []
        sub = self.subgroup([])
        while sub.order() < target:
            extended = False
            for g in elems:
                if g.is_identity() or not _is_p_power(g.order(), p):
                    continue
                if sub.contains(g):
                    continue
                if all(sub.contains(h.conjugate(g)) for h in gens):
                    gens.append(g)
                    sub = self.subgroup(gens)
                    extended = True
                    break
            if not extended:  # mathematically impossible below a Sylow subgroup
                raise AssertionError("p-subgroup growth stalled below the full p-part")
        return self.subgroup(gens, name=f"sylow_{p}")

    def _sylow_wreath(self, p: int, cert: StructureCertificate, caps: Caps) -> "PermGroup":
        base_comp, top = cert.parts
        d = cert.block_size
        blocks = self.degree // d
        gens: list[Permutation] = []
        if base_comp.order() % p == 0:
            syl_base = base_comp.sylow(p, caps)
            for j in range(blocks):
                for g in syl_base.generators:
                    gens.append(embed_block(g, j, d, self.degree))
        if top.order() % p == 0:
            syl_top = top.sylow(p, caps)
            for g in syl_top.generators:
                gens.append(embed_top(g, d, self.degree))
        return self.subgroup(gens, name=f"sylow_{p}")

    def _sylow_direct(self, p: int, cert: StructureCertificate, caps: Caps) -> "PermGroup":
        gens: list[Permutation] = []
        offset = 0
        for part in cert.parts:
            if part.order() % p == 0:
                for g in part.sylow(p, caps).generators:
                    gens.append(embed_shift(g, offset, self.degree))
            offset += part.degree
        return self.subgroup(gens, name=f"sylow_{p}")


@dataclass(frozen=True)
class ConjugacyClass:
    rep: Permutation
    size: int
    members: tuple[Permutation, ...] = field(repr=False)


def _rebuild_group(degree, generators, name, certificate):
    return PermGroup(degree, generators, name=name, certificate=certificate)


def group_from_generators(
    degree: int,
    gens: Sequence[Permutation],
    name: str | None = None,
    certificate: StructureCertificate | None = None,
) -> PermGroup:
    return PermGroup(degree, gens, name=name, certificate=certificate)


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        part *= p
        n //= p
    return part


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# -- point embeddings used by product/wreath constructions -----------------


def embed_block(g: Permutation, block: int, block_size: int, degree: int) -> Permutation:
    """Act as g inside one block of size block_size, fix everything else."""
    images = list(range(degree))
    base = block * block_size
    for i in range(block_size):
        images[base + i] = base + g[i]
    return Permutation(images)


def embed_top(g: Permutation, block_size: int, degree: int) -> Permutation:
    """Permute whole blocks by g without twisting inside them."""
    images = list(range(degree))
    for j in range(degree // block_size):
        for i in range(block_size):
            images[j * block_size + i] = g[j] * block_size + i
    return Permutation(images)


def embed_shift(g: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(degree))
    for i in range(g.degree):
        images[offset + i] = offset + g[i]
    return Permutation(images)


# -- coset actions and quotients --------------------------------------------


class QuotientMap:
    """The permutation action of G on right cosets of a subgroup H.

    Cosets are discovered breadth-first and identified by their canonical
    (lexicographically least) representative, computed with a point-ordered
    stabilizer chain of H.  When H is normal the image is the quotient
    G/H; ``preimage`` pulls image elements back through a shadowed chain,
    and ``kernel`` rebuilds the kernel from Schreier generators over the
    canonical transversal.
    """

    def __init__(self, group: PermGroup, sub: PermGroup):
        self.group = group
        self.sub = sub
        self.coset_reps: list[Permutation] = []
        self.gen_images: list[Permutation] = []
        self.image: PermGroup | None = None
        self._canon_chain: StabilizerChain | None = None
        self._index: dict[tuple[int, ...], int] = {}
        self._shadow_chain: StabilizerChain | None = None

    @classmethod
    def trivial(cls, group: PermGroup) -> "QuotientMap":
        """Quotient by the trivial subgroup: the identity map, no cosets."""
        qm = cls(group, group.subgroup([]))
        qm.image = group
        qm.gen_images = list(group.generators)
        return qm

    @classmethod
    def build(cls, group: PermGroup, sub: PermGroup, caps: Caps | None = None) -> "QuotientMap":
        caps = resolve(caps)
        for g in sub.generators:
            if not group.contains(g):
                raise NotASubgroup("subgroup generator lies outside the ambient group")
        index = group.order() // sub.order()
        if index > caps.index_cap:
            raise CapExceeded("index_cap", caps.index_cap, index, "coset action")

        qm = cls(group, sub)
        qm._canon_chain = StabilizerChain.with_prescribed_base(
            sub.degree, sub.identity, range(sub.degree), sub.generators
        )
        start = qm._canonical(group.identity)
        qm.coset_reps = [start]
        qm._index = {start.images: 0}
        tables: list[list[int]] = [[] for _ in group.generators]
        i = 0
        while i < len(qm.coset_reps):
            rep = qm.coset_reps[i]
            for k, g in enumerate(group.generators):
                dest = qm._canonical(rep * g)
                j = qm._index.get(dest.images)
                if j is None:
                    j = len(qm.coset_reps)
                    qm.coset_reps.append(dest)
                    qm._index[dest.images] = j
                tables[k].append(j)
            i += 1
        n_cosets = len(qm.coset_reps)
        qm.gen_images = [Permutation(tables[k]) for k in range(len(group.generators))]
        qm.image = PermGroup(n_cosets, qm.gen_images,
                             name=f"{group.name or 'G'}/{sub.name or 'H'}")
        return qm

    def _canonical(self, x: Permutation) -> Permutation:
        """Lexicographically least element of the right coset H*x."""
        g = x
        for level in self._canon_chain.levels:
            orbit = level.transversal
            best = min(orbit, key=lambda q: g.images[q])
            g = level.transversal[best] * g
        return g

    # -- maps in both directions ------------------------------------------

    def apply(self, g: Permutation) -> Permutation:
        """Image of an arbitrary group element under the coset action."""
        if self.image is self.group:  # trivial quotient
            return g
        images = [self._index[self._canonical(rep * g).images] for rep in self.coset_reps]
        return Permutation(images)

    def _shadows(self) -> StabilizerChain:
        if self._shadow_chain is None:
            ident = ShadowPerm(self.image.identity, self.group.identity)
            pairs = [ShadowPerm(a, g) for a, g in zip(self.gen_images, self.group.generators)]
            self._shadow_chain = StabilizerChain(self.image.degree, ident, pairs)
        return self._shadow_chain

    def preimage(self, q: Permutation) -> Permutation:
        """Some g in G with apply(g) == q."""
        if self.image is self.group:
            return q
        parts = self._shadows().transversal_decomposition(q)
        if parts is None:
            raise NotAMember("element is not in the image of the coset action")
        shadow = self.group.identity
        for t in reversed(parts):
            shadow = shadow * t.shadow
        return shadow

    def pull_back(self, image_sub: PermGroup, name: str | None = None) -> PermGroup:
        """Full preimage of a subgroup of the image (contains the kernel)."""
        if self.image is self.group:
            return image_sub
        gens = list(self.sub.generators)
        gens.extend(self.preimage(g) for g in image_sub.generators)
        return self.group.subgroup(gens, name=name)

    def kernel(self, caps: Caps | None = None) -> PermGroup:
        """Kernel of the action, from Schreier generators over the
        canonical transversal; verified against |G| / |image|."""
        if self.image is self.group:
            return self.group.subgroup([])
        caps = resolve(caps)
        if self.image.order() > caps.index_cap:
            raise CapExceeded("index_cap", caps.index_cap, self.image.order(),
                              "kernel reconstruction walks one transversal per image element")
        chain = self._shadows()
        expected = self.group.order() // self.image.order()
        kernel_chain = StabilizerChain(self.group.degree, self.group.identity)
        gens: list[Permutation] = []
        for coset_shadow in chain.iter_elements():
            t = coset_shadow.shadow
            for g, a in zip(self.group.generators, self.gen_images):
                moved = t * g
                parts = chain.transversal_decomposition(coset_shadow.action * a)
                rep = self.group.identity
                for piece in reversed(parts):
                    rep = rep * piece.shadow
                candidate = moved * rep.inverse()
                if not kernel_chain.contains(candidate):
                    kernel_chain.extend(candidate)
                    gens.append(candidate)
        kernel = self.group.subgroup(gens, name="kernel")
        if kernel.order() != expected:
            raise CertificateError(
                f"kernel reconstruction got order {kernel.order()}, expected {expected}"
            )
        return kernel

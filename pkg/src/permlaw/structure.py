"""Structure theory: solvable radical, non-abelian socle, the
alternating radical/socle series and its nonsolvable length, Frattini
subgroups, the rarefied-structure report, small simple-group order
recognition, and verbal subgroups.

The radical and socle are computed from conjugacy-class representatives:
an element lies in the solvable radical exactly when its normal closure
is solvable, and every minimal normal subgroup is the normal closure of
each of its non-identity elements.  Groups too large to enumerate fall
back to structure certificates attached at construction time.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from random import Random
from typing import Sequence

from .caps import Caps, resolve
from .errors import CapExceeded, NoApplicablePath
from .groups import PermGroup, QuotientMap, embed_shift
from .perms import Permutation
from .smallgroup import SmallGroupTable, frattini_from_table
from .words import FreeWord, evaluate


# -- solvable radical ---------------------------------------------------------


def solvable_radical(group: PermGroup, caps: Caps | None = None) -> PermGroup:
    """Largest normal solvable subgroup."""
    caps = resolve(caps)
    cert = group.certificate
    if group.order() <= caps.element_cap:
        return _radical_small(group, caps)
    if cert is not None:
        if cert.kind == "simple-nonabelian":
            return group.subgroup([], name="radical")
        if cert.kind == "imprimitive-wreath":
            base_comp = cert.parts[0]
            if _is_simple_nonabelian(base_comp, caps):
                # the base is a product of non-abelian simples with trivial
                # centraliser, so no nontrivial solvable subgroup is normal
                return group.subgroup([], name="radical")
        if cert.kind == "direct-product":
            gens: list[Permutation] = []
            offset = 0
            for part in cert.parts:
                for g in solvable_radical(part, caps).generators:
                    gens.append(embed_shift(g, offset, group.degree))
                offset += part.degree
            return group.subgroup(gens, name="radical")
    raise NoApplicablePath(
        f"group of order {group.order()} has no enumeration path and no usable certificate"
    )


def _radical_small(group: PermGroup, caps: Caps) -> PermGroup:
    chosen = []
    for rep in group.conjugacy_class_reps(caps):
        if rep.is_identity():
            continue
        if group.normal_closure([rep]).is_solvable():
            chosen.append(rep)
    if not chosen:
        return group.subgroup([], name="radical")
    return group.normal_closure(chosen, name="radical")


# -- non-abelian socle -----------------------------------------------------------


def minimal_normal_closures(group: PermGroup, caps: Caps | None = None) -> list[PermGroup]:
    """Distinct inclusion-minimal normal closures of non-identity class
    representatives: exactly the minimal normal subgroups."""
    caps = resolve(caps)
    closures: list[PermGroup] = []
    for rep in group.conjugacy_class_reps(caps):
        if rep.is_identity():
            continue
        closures.append(group.normal_closure([rep]))
    minimal: list[PermGroup] = []
    for cand in closures:
        if any(cand.contains_subgroup(other) and cand.order() > other.order() for other in closures):
            continue
        if any(cand.same_group_as(kept) for kept in minimal):
            continue
        minimal.append(cand)
    return minimal


def nonabelian_socle(group: PermGroup, caps: Caps | None = None) -> PermGroup:
    """Product of the minimal normal non-abelian subgroups."""
    caps = resolve(caps)
    cert = group.certificate
    if group.order() <= caps.element_cap:
        gens: list[Permutation] = []
        for sub in minimal_normal_closures(group, caps):
            if not _generators_commute(sub):
                gens.extend(sub.generators)
        return group.subgroup(gens, name="socle")
    if cert is not None:
        if cert.kind == "simple-nonabelian":
            return group.subgroup(group.generators, name="socle")
        if cert.kind == "imprimitive-wreath":
            base_comp, top = cert.parts
            if _is_simple_nonabelian(base_comp, caps) and top.is_transitive():
                return group.subgroup(cert.base_generators, name="socle")
        if cert.kind == "direct-product":
            gens = []
            offset = 0
            for part in cert.parts:
                for g in nonabelian_socle(part, caps).generators:
                    gens.append(embed_shift(g, offset, group.degree))
                offset += part.degree
            return group.subgroup(gens, name="socle")
    raise NoApplicablePath(
        f"group of order {group.order()} has no enumeration path and no usable certificate"
    )


def _generators_commute(group: PermGroup) -> bool:
    gens = group.generators
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])


def _is_simple_nonabelian(group: PermGroup, caps: Caps) -> bool:
    if group.certificate is not None and group.certificate.kind == "simple-nonabelian":
        return True
    if group.order() > caps.element_cap:
        return False
    if group.is_trivial() or _generators_commute(group):
        return False
    if not solvable_radical(group, caps).is_trivial():
        return False
    minimals = minimal_normal_closures(group, caps)
    return len(minimals) == 1 and minimals[0].same_group_as(group)


# -- the alternating series and nonsolvable length -------------------------------


@dataclass
class SeriesLayer:
    kind: str                      # "R" or "S"
    index: int                     # 1-based layer number
    subgroup: PermGroup            # the term, as a subgroup of the original group
    quotient: QuotientMap | None   # map from G used to compute this term
    image_term: PermGroup          # the term's image inside that quotient
    minimal_normal_count: int | None = None
    component_orders: list[int] = field(default_factory=list)

    @property
    def component_count(self) -> int:
        return len(self.component_orders)

    @property
    def component_order(self) -> int | None:
        orders = set(self.component_orders)
        return orders.pop() if len(orders) == 1 else None


@dataclass
class RSSeries:
    group: PermGroup
    layers: list[SeriesLayer] = field(default_factory=list)
    lamda: int = 0
    complete: bool = True
    failure: str | None = None

    def term_orders(self) -> list[int]:
        return [layer.subgroup.order() for layer in self.layers]

    def s_layers(self) -> list[SeriesLayer]:
        return [layer for layer in self.layers if layer.kind == "S"]

    def r_layers(self) -> list[SeriesLayer]:
        return [layer for layer in self.layers if layer.kind == "R"]


def rs_series(group: PermGroup, caps: Caps | None = None) -> RSSeries:
    """Alternate radical and socle steps through quotients until the
    whole group is reached.  Terms are pulled back to subgroups of the
    original group through the recorded coset actions."""
    caps = resolve(caps)
    series = RSSeries(group)
    current = group.subgroup([], name="R0")
    kind = "R"
    index = 1
    while True:
        try:
            if current.is_trivial():
                qmap = QuotientMap.trivial(group)
            else:
                qmap = group.quotient_by(current, caps)
            image = qmap.image
            if kind == "R":
                image_term = solvable_radical(image, caps)
            else:
                image_term = nonabelian_socle(image, caps)
        except (CapExceeded, NoApplicablePath) as exc:
            series.complete = False
            series.failure = f"{kind}{index}: {exc}"
            return series
        term = qmap.pull_back(image_term, name=f"{kind}{index}")
        layer = SeriesLayer(kind, index, term, qmap, image_term)
        if kind == "S":
            if term.order() > current.order():
                series.lamda += 1
                _attach_socle_diagnostics(layer, image, caps)
        series.layers.append(layer)
        if term.order() == group.order():
            return series
        if kind == "S" and term.order() == current.order():
            # socle step added nothing: the quotient is nontrivial with no
            # minimal normal non-abelian subgroup, yet its radical was
            # trivial -- impossible for finite groups, so this is a bug
            raise AssertionError("socle step stalled on a nontrivial radical-free quotient")
        current = term
        if kind == "R":
            kind = "S"
        else:
            kind = "R"
            index += 1


def _attach_socle_diagnostics(layer: SeriesLayer, image: PermGroup, caps: Caps) -> None:
    cert = image.certificate
    if image.order() <= caps.element_cap:
        minimals = minimal_normal_closures(image, caps)
        layer.minimal_normal_count = len(minimals)
        for m in minimals:
            if _generators_commute(m):
                continue
            for comp in minimal_normal_closures(m, caps):
                layer.component_orders.append(comp.order())
    elif cert is not None and cert.kind == "imprimitive-wreath":
        base_comp, _top = cert.parts
        layer.minimal_normal_count = 1
        layer.component_orders = [base_comp.order()] * (image.degree // cert.block_size)


def nonsolvable_length(group: PermGroup, caps: Caps | None = None) -> int:
    series = rs_series(group, caps)
    if not series.complete:
        raise CapExceeded("element_cap", resolve(caps).element_cap, None,
                          f"series incomplete: {series.failure}")
    return series.lamda


# -- Frattini subgroup -------------------------------------------------------------


def frattini(group: PermGroup, caps: Caps | None = None) -> PermGroup:
    """Intersection of the maximal subgroups.

    The Frattini subgroup is nilpotent, hence contained in the solvable
    radical; when the radical is trivial the answer is immediate.
    Otherwise the subgroup lattice is enumerated under the cap.
    """
    caps = resolve(caps)
    if group.is_trivial():
        return group.subgroup([])
    try:
        if solvable_radical(group, caps).is_trivial():
            return group.subgroup([], name="frattini")
    except NoApplicablePath:
        pass
    if group.order() > caps.frattini_cap:
        raise CapExceeded("frattini_cap", caps.frattini_cap, group.order(),
                          "subgroup-lattice enumeration")
    table = SmallGroupTable(group, caps)
    phi = frattini_from_table(table)
    return group.subgroup(phi.generators, name="frattini")


# -- recognised simple-group orders -------------------------------------------------


@dataclass(frozen=True)
class LCandidate:
    """A small-simple-group family member whose order matches a query.

    ``conditional`` marks parameterisations that exist only under the
    convention that naturals include 0 (exponent 2**0, i.e. prime-field
    projective groups); both readings are reported, never guessed.
    """

    family: str              # "psl2" or "psl3" or "sz"
    q: int
    parameter: tuple[str, int]
    conditional: bool = False

    def order(self) -> int:
        if self.family == "psl2":
            return self.q * (self.q * self.q - 1) // math.gcd(2, self.q - 1)
        if self.family == "psl3":
            return 5616
        if self.family == "sz":
            return self.q * self.q * (self.q * self.q + 1) * (self.q - 1)
        raise ValueError(self.family)


def l_class_candidates(order: int) -> list[LCandidate]:
    """All family parameterisations whose order formula matches.

    Families: projective 2-dimensional groups over fields of size 2^r or
    3^r (r an odd prime) or p^(2^a) (p an odd prime), the projective
    3-dimensional group over the 3-element field, and the Suzuki groups
    over fields of size 2^r (r an odd prime).
    """
    if order < 1:
        return []
    out: list[LCandidate] = []
    if order == 5616:
        out.append(LCandidate("psl3", 3, ("q", 3)))
    for r in _odd_primes_while(lambda r: _psl2_order(2 ** r) <= order):
        if _psl2_order(2 ** r) == order:
            out.append(LCandidate("psl2", 2 ** r, ("r", r)))
    for r in _odd_primes_while(lambda r: _psl2_order(3 ** r) <= order):
        if _psl2_order(3 ** r) == order:
            out.append(LCandidate("psl2", 3 ** r, ("r", r)))
    p = 3
    while _psl2_order(p) <= order:
        a = 0
        q = p
        while _psl2_order(q) <= order:
            if _psl2_order(q) == order:
                out.append(LCandidate("psl2", q, ("a", a), conditional=(a == 0)))
            a += 1
            q = q * q
        p = _next_odd_prime(p)
    for r in _odd_primes_while(lambda r: _sz_order(2 ** r) <= order):
        if _sz_order(2 ** r) == order:
            out.append(LCandidate("sz", 2 ** r, ("r", r)))
    return out


def scan_order_collisions(limit: int) -> list[tuple[int, list[LCandidate]]]:
    """All recognised orders up to `limit` hit by more than one family
    member.  Arithmetic only; used as a build-time sanity assertion."""
    seen: dict[int, list[LCandidate]] = {}
    for r in _odd_primes_while(lambda r: _psl2_order(2 ** r) <= limit):
        seen.setdefault(_psl2_order(2 ** r), []).append(LCandidate("psl2", 2 ** r, ("r", r)))
    for r in _odd_primes_while(lambda r: _psl2_order(3 ** r) <= limit):
        seen.setdefault(_psl2_order(3 ** r), []).append(LCandidate("psl2", 3 ** r, ("r", r)))
    p = 3
    while _psl2_order(p) <= limit:
        a = 0
        q = p
        while _psl2_order(q) <= limit:
            seen.setdefault(_psl2_order(q), []).append(
                LCandidate("psl2", q, ("a", a), conditional=(a == 0)))
            a += 1
            q = q * q
        p = _next_odd_prime(p)
    for r in _odd_primes_while(lambda r: _sz_order(2 ** r) <= limit):
        seen.setdefault(_sz_order(2 ** r), []).append(LCandidate("sz", 2 ** r, ("r", r)))
    if 5616 <= limit:
        seen.setdefault(5616, []).append(LCandidate("psl3", 3, ("q", 3)))
    return [(n, cands) for n, cands in sorted(seen.items()) if len(cands) > 1]


def _psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


def _sz_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _next_odd_prime(p: int) -> int:
    p += 2
    while not _is_prime(p):
        p += 2
    return p


def _odd_primes_while(pred) -> list[int]:
    out = []
    r = 3
    while pred(r):
        out.append(r)
        r = _next_odd_prime(r)
    return out


# -- rarefied-structure report -------------------------------------------------------


@dataclass
class RarefiedReport:
    group_name: str | None
    m: int
    lamda: int
    lambda_matches: bool
    frattini_layers: list[bool]          # layer 0 compares R1 with Phi(G)
    unique_minimal_layers: list[bool]
    component_layers: list[str]          # "true" | "conditional" | "false"
    complete: bool = True
    failure: str | None = None

    @property
    def frattini_ok(self) -> bool:
        return all(self.frattini_layers)

    @property
    def unique_minimal_ok(self) -> bool:
        return all(self.unique_minimal_layers)

    @property
    def components_ok(self) -> bool:
        return all(s != "false" for s in self.component_layers)

    @property
    def conditional(self) -> bool:
        return any(s == "conditional" for s in self.component_layers)

    @property
    def rarefied(self) -> bool:
        """Verdict under the reading that exponent 0 is allowed in the
        recognised families; ``conditional`` marks when it matters."""
        return (self.complete and self.lambda_matches and self.frattini_ok
                and self.unique_minimal_ok and self.components_ok)

    @property
    def rarefied_strict(self) -> bool:
        """Verdict under the reading that exponent 0 is excluded."""
        return self.rarefied and not self.conditional


def is_rarefied(group: PermGroup, m: int, caps: Caps | None = None) -> RarefiedReport:
    """Check the layered structure conditions at nonsolvable length m.

    Per layer: the radical step must coincide with the Frattini subgroup
    of the corresponding quotient, the socle layer must be the unique
    minimal normal subgroup there, and its simple components must have
    an order recognised by ``l_class_candidates`` (order-only matching,
    safe at desk scale where no two family members share an order).
    For m = 0 the layer conditions are vacuous.
    """
    caps = resolve(caps)
    series = rs_series(group, caps)
    report = RarefiedReport(
        group_name=group.name,
        m=m,
        lamda=series.lamda,
        lambda_matches=(series.lamda == m),
        frattini_layers=[],
        unique_minimal_layers=[],
        component_layers=[],
        complete=series.complete,
        failure=series.failure,
    )
    if m == 0 or not series.complete:
        return report

    r_layers = series.r_layers()
    s_layers = series.s_layers()

    # layer 0: the first radical term against the Frattini subgroup of G
    try:
        phi = frattini(group, caps)
        report.frattini_layers.append(r_layers[0].subgroup.same_group_as(phi) if r_layers else phi.is_trivial())
    except CapExceeded:
        report.frattini_layers.append(False)
        report.complete = False
        report.failure = "frattini cap exceeded at layer 0"

    checked = min(m, len(s_layers))
    for i in range(1, checked + 1):
        s_layer = s_layers[i - 1]
        # radical of G/S_i against Frattini of G/S_i
        if s_layer.subgroup.order() == group.order():
            report.frattini_layers.append(True)  # quotient is trivial
        else:
            nxt = next((l for l in r_layers if l.index == i + 1), None)
            if nxt is None or nxt.quotient is None:
                report.frattini_layers.append(False)
            else:
                try:
                    phi_q = frattini(nxt.quotient.image, caps)
                    report.frattini_layers.append(nxt.image_term.same_group_as(phi_q))
                except CapExceeded:
                    report.frattini_layers.append(False)
                    report.complete = False
                    report.failure = f"frattini cap exceeded at layer {i}"
        # uniqueness of the minimal normal subgroup of G/R_i
        quotient = s_layer.quotient
        image = quotient.image if quotient is not None else None
        if image is not None and image.order() <= caps.element_cap:
            minimals = minimal_normal_closures(image, caps)
            report.unique_minimal_layers.append(
                len(minimals) == 1 and minimals[0].same_group_as(s_layer.image_term))
        elif s_layer.minimal_normal_count is not None:
            report.unique_minimal_layers.append(s_layer.minimal_normal_count == 1)
        else:
            report.unique_minimal_layers.append(False)
        # component orders against the recognised families
        if not s_layer.component_orders:
            report.component_layers.append("false")
        else:
            statuses = []
            for comp_order in s_layer.component_orders:
                candidates = l_class_candidates(comp_order)
                if any(not c.conditional for c in candidates):
                    statuses.append("true")
                elif candidates:
                    statuses.append("conditional")
                else:
                    statuses.append("false")
            if "false" in statuses:
                report.component_layers.append("false")
            elif "conditional" in statuses:
                report.component_layers.append("conditional")
            else:
                report.component_layers.append("true")
    return report


# -- dihedral subgroup classes ------------------------------------------------------


@dataclass
class DihedralClassReport:
    prime: int
    subgroup_count: int
    class_sizes: list[int]
    invariant_classes: list[bool]

    @property
    def single_invariant_class(self) -> bool:
        return len(self.class_sizes) == 1 and all(self.invariant_classes)


def dihedral_class_check(
    group: PermGroup,
    extra_auts: Sequence[Permutation] = (),
    caps: Caps | None = None,
) -> dict[int, DihedralClassReport]:
    """Exhaustively enumerate dihedral subgroups of order 2p (p an odd
    prime), partition them into conjugacy classes, and test invariance
    of each class under the supplied outer conjugators.

    The group must be simple non-abelian; extra automorphisms are given
    as permutations of the same points (elements of a larger ambient
    group normalising this one).
    """
    caps = resolve(caps)
    if not _is_simple_nonabelian(group, caps):
        raise ValueError("dihedral class scan requires a simple non-abelian group")
    table = SmallGroupTable(group, caps)
    n = group.order()
    reports: dict[int, DihedralClassReport] = {}
    for p in _odd_prime_divisors(n):
        if (2 * p) > n or n % (2 * p) != 0:
            continue
        subs = _dihedral_subgroups(table, p)
        classes = _conjugacy_classes_of_subgroups(table, subs)
        invariants = []
        class_of = {}
        for ci, cls in enumerate(classes):
            for s in cls:
                class_of[s] = ci
        for cls in classes:
            rep_set = cls[0]
            ok = True
            for aut in extra_auts:
                try:
                    image = frozenset(
                        table.index[table.elements[i].conjugate(aut)] for i in rep_set
                    )
                except KeyError as exc:
                    raise ValueError("conjugator does not normalise the group") from exc
                if class_of.get(image) != class_of[rep_set]:
                    ok = False
                    break
            invariants.append(ok)
        reports[p] = DihedralClassReport(
            prime=p,
            subgroup_count=len(subs),
            class_sizes=sorted((len(c) for c in classes), reverse=True),
            invariant_classes=invariants,
        )
    return reports


def _odd_prime_divisors(n: int) -> list[int]:
    out = []
    d = 3
    m = n
    while m % 2 == 0:
        m //= 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 2
    if m > 1:
        out.append(m)
    return out


def _dihedral_subgroups(table: SmallGroupTable, p: int) -> list[frozenset[int]]:
    """All subgroups of order 2p with a cyclic order-p part inverted by
    an involution."""
    cyclics: dict[frozenset[int], int] = {}
    for i, order in enumerate(table.orders):
        if order == p:
            cyclics.setdefault(table.cyclic_subgroup(i), i)
    involutions = [i for i, order in enumerate(table.orders) if order == 2]
    subs = set()
    for cyc, gen in cyclics.items():
        gen_inv = table.inv[gen]
        for t in involutions:
            if table.conjugate_idx(gen, t) != gen_inv:
                continue
            members = set(cyc)
            members.update(table.mult[c][t] for c in cyc)
            subs.add(frozenset(members))
    return sorted(subs, key=sorted)


def _conjugacy_classes_of_subgroups(
    table: SmallGroupTable, subs: list[frozenset[int]]
) -> list[list[frozenset[int]]]:
    gen_idxs = [table.index[g] for g in table.group.generators]
    remaining = dict.fromkeys(subs)
    classes = []
    for seed in subs:
        if seed not in remaining:
            continue
        cls = [seed]
        del remaining[seed]
        queue = [seed]
        while queue:
            cur = queue.pop()
            for g in gen_idxs:
                image = frozenset(table.conjugate_idx(x, g) for x in cur)
                if image in remaining:
                    del remaining[image]
                    cls.append(image)
                    queue.append(image)
        classes.append(cls)
    return classes


# -- verbal subgroups ------------------------------------------------------------------


@dataclass
class VerbalResult:
    subgroup: PermGroup
    exhaustive: bool
    tuples_scanned: int


def verbal_subgroup(
    group: PermGroup,
    word: FreeWord,
    caps: Caps | None = None,
    seed: int = 0,
    sample_budget: int = 2000,
) -> VerbalResult:
    """Subgroup generated by the image of the word map.

    Exhaustive when the pruned tuple space fits the cap (first variable
    over class representatives; the image set is closed under
    conjugation, so the normal closure of the restricted image is the
    full verbal subgroup).  Otherwise a seeded sample gives a lower
    bound flagged non-exhaustive.
    """
    caps = resolve(caps)
    if word.is_trivial():
        return VerbalResult(group.subgroup([], name="verbal"), True, 0)
    k = word.variable_count
    exhaustive = False
    space = None
    if group.order() <= caps.element_cap:
        reps = group.conjugacy_class_reps(caps)
        space = len(reps) * group.order() ** (k - 1)
        exhaustive = space <= caps.tuple_cap
    if exhaustive:
        elems = group.elements(caps)
        images = set()
        count = 0
        for tup in _tuples_first_restricted(reps, elems, k):
            images.add(evaluate(word, tup))
            count += 1
        gens = sorted(g for g in images if not g.is_identity())
        return VerbalResult(group.normal_closure(gens, name="verbal"), True, count)
    rng = Random(seed)
    images = set()
    for _ in range(sample_budget):
        tup = tuple(group.random_element(rng) for _ in range(k))
        images.add(evaluate(word, tup))
    gens = sorted(g for g in images if not g.is_identity())
    return VerbalResult(group.subgroup(gens, name="verbal-lower-bound"), False, sample_budget)


def _tuples_first_restricted(reps, elems, k):
    if k == 1:
        for r in reps:
            yield (r,)
        return
    for r in reps:
        for rest in itertools.product(elems, repeat=k - 1):
            yield (r,) + rest

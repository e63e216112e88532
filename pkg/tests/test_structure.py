"""Radical, socle, layered series, Frattini, family recognition,
dihedral class scans, and verbal subgroups."""

import itertools

import pytest

from oracles import (
    closure_elements,
    naive_conjugacy_classes,
    naive_is_solvable,
    naive_normal_closure,
    naive_subgroups_by_pairs,
)
from permlaw import corpus
from permlaw.caps import Caps
from permlaw.errors import CapExceeded
from permlaw.perms import Permutation
from permlaw.structure import (
    dihedral_class_check,
    frattini,
    is_rarefied,
    l_class_candidates,
    minimal_normal_closures,
    nonabelian_socle,
    nonsolvable_length,
    rs_series,
    scan_order_collisions,
    solvable_radical,
    verbal_subgroup,
)
from permlaw.words import parse_word


# -- solvable radical ---------------------------------------------------------


def test_radical_spot_checks(s4, a5):
    assert solvable_radical(s4).same_group_as(s4)
    assert solvable_radical(a5).is_trivial()


def test_radical_c6_x_a5_oracle():
    g = corpus.direct_product(corpus.cyclic(6), corpus.alternating(5))
    # oracle: an element is in the radical iff its full conjugate closure is
    # solvable; one closure per conjugacy class (conjugate elements generate
    # the same normal closure), solvability memoised per closure
    elems = list(closure_elements(11, g.generators))
    classes = naive_conjugacy_classes(elems)
    solvable_cache: dict[frozenset, bool] = {}
    radical_elems = set()
    for cls in classes:
        closure = frozenset(naive_normal_closure(11, elems, [next(iter(cls))]))
        if closure not in solvable_cache:
            solvable_cache[closure] = naive_is_solvable(11, closure)
        if solvable_cache[closure]:
            radical_elems |= cls
    rad = solvable_radical(g)
    assert rad.order() == 6 == len(radical_elems)
    assert set(rad.elements()) == radical_elems
    # the radical is the embedded cyclic factor
    assert all(p < 6 for h in rad.generators for p in h.moved_points())


def test_radical_properties(s4, s5, a5, psl2_7):
    for g in (s4, s5, a5, psl2_7, corpus.dihedral(6)):
        rad = solvable_radical(g)
        assert rad.is_solvable()
        assert g.is_normal_subgroup(rad)
        # self-stability: the radical of the quotient is trivial
        if rad.is_trivial():
            quotient_rad = solvable_radical(g)
            assert quotient_rad.same_group_as(rad) or quotient_rad.is_trivial()
        elif rad.order() < g.order():
            qm = g.quotient_by(rad)
            assert solvable_radical(qm.image).is_trivial()


def test_radical_certificate_paths(a5_wr_a5):
    assert solvable_radical(a5_wr_a5).is_trivial()
    big_direct = corpus.direct_product(
        corpus.wreath(corpus.alternating(5), corpus.alternating(5)),
        corpus.cyclic(3),
    )
    rad = solvable_radical(big_direct)
    assert rad.order() == 3


# -- non-abelian socle -----------------------------------------------------------


def test_socle_spot_checks(s4, s5):
    assert nonabelian_socle(s4).is_trivial()
    soc = nonabelian_socle(s5)
    assert soc.order() == 60
    assert soc.same_group_as(corpus.alternating(5))


def test_socle_direct_square():
    g = corpus.direct_product(corpus.alternating(5), corpus.alternating(5))
    soc = nonabelian_socle(g)
    assert soc.order() == 3600
    minimals = [m for m in minimal_normal_closures(g) if len(m.generators) > 0]
    nonabelian = [m for m in minimals
                  if any(a * b != b * a for a in m.generators for b in m.generators)]
    assert len(nonabelian) == 2
    for m, other in itertools.permutations(nonabelian, 2):
        # distinct minimal normal factors intersect trivially and commute
        for a in m.generators:
            for b in other.generators:
                assert a * b == b * a


def test_socle_wreath_certificate(a5_wr_a5):
    soc = nonabelian_socle(a5_wr_a5)
    assert soc.order() == 60 ** 5
    assert a5_wr_a5.is_normal_subgroup(soc)


# -- the layered series ------------------------------------------------------------


def test_series_solvable_group(s4):
    series = rs_series(s4)
    assert series.lamda == 0
    assert series.term_orders() == [24]
    assert series.layers[0].subgroup.same_group_as(s4)


def test_series_s5(s5):
    series = rs_series(s5)
    assert series.lamda == 1
    assert series.term_orders() == [1, 60, 120]
    kinds = [l.kind for l in series.layers]
    assert kinds == ["R", "S", "R"]


def test_series_wreath(a5_wr_a5):
    series = rs_series(a5_wr_a5)
    assert series.lamda == 2
    assert series.term_orders() == [1, 60 ** 5, 60 ** 5, 60 ** 6]
    s_layers = series.s_layers()
    assert s_layers[0].minimal_normal_count == 1
    assert s_layers[0].component_count == 5
    assert s_layers[0].component_order == 60
    assert s_layers[1].component_count == 1
    assert s_layers[1].component_order == 60


@pytest.mark.parametrize("maker,expected", [
    (lambda: corpus.symmetric(4), 0),
    (lambda: corpus.alternating(5), 1),
    (lambda: corpus.symmetric(5), 1),
    (lambda: corpus.psl2(7), 1),
    (lambda: corpus.psl2(8), 1),
])
def test_lambda_values(maker, expected):
    assert nonsolvable_length(maker()) == expected


def test_lambda_quotient_recursion(s5, a5_wr_c2):
    # removing the first socle layer drops the length by exactly one
    for g in (s5, a5_wr_c2):
        series = rs_series(g)
        if series.lamda >= 1:
            s1 = series.s_layers()[0].subgroup
            if s1.order() < g.order():
                qm = g.quotient_by(s1)
                assert nonsolvable_length(qm.image) == series.lamda - 1


def test_lambda_wreath_recursion_cross_check(a5_wr_c2, a5_wr_a5):
    # lambda(A wr B) = 1 + lambda(B) for a non-abelian simple base
    assert nonsolvable_length(a5_wr_c2) == 1 + nonsolvable_length(corpus.cyclic(2))
    assert nonsolvable_length(a5_wr_a5) == 1 + nonsolvable_length(corpus.alternating(5))


# -- Frattini subgroups ---------------------------------------------------------------


def test_frattini_q8(q8):
    phi = frattini(q8)
    assert phi.order() == 2
    # oracle: subgroups of Q8 are all 2-generated; intersect the maximal ones
    elems = closure_elements(8, q8.generators)
    subs = naive_subgroups_by_pairs(8, elems)
    proper = [s for s in subs if len(s) < 8]
    maximal = [s for s in proper if not any(s < t for t in proper)]
    meet = frozenset.intersection(*maximal)
    assert set(phi.elements()) == set(meet)
    assert len(meet) == 2


def test_frattini_s4_and_c4(s4):
    assert frattini(s4).is_trivial()
    phi = frattini(corpus.cyclic(4))
    assert phi.order() == 2


def test_frattini_trivial_radical_fast_path(psl2_8):
    # order 504 > lattice cap 200 here, but the radical is trivial
    assert frattini(psl2_8, Caps(frattini_cap=200)).is_trivial()


def test_frattini_cap():
    # solvable, so the trivial-radical shortcut cannot apply
    with pytest.raises(CapExceeded):
        frattini(corpus.cyclic(128), Caps(frattini_cap=100))


def test_frattini_normal_nilpotent(q8, s4):
    for g in (q8, s4, corpus.cyclic(4), corpus.dihedral(4), corpus.alternating(4)):
        phi = frattini(g)
        assert g.is_normal_subgroup(phi)
        # nilpotent: all Sylow subgroups normal in phi
        n = phi.order()
        p = 2
        while p <= n:
            if n % p == 0:
                assert phi.is_normal_subgroup(phi.sylow(p))
            p += 1


# -- family order recognition ------------------------------------------------------------


def test_l_class_examples():
    assert [(c.family, c.q) for c in l_class_candidates(5616)] == [("psl3", 3)]
    assert [(c.family, c.q) for c in l_class_candidates(29120)] == [("sz", 8)]
    sixty = l_class_candidates(60)
    assert [(c.family, c.q, c.conditional) for c in sixty] == [("psl2", 5, True)]
    assert l_class_candidates(504) == [c for c in l_class_candidates(504) if not c.conditional]
    assert l_class_candidates(7) == []
    assert l_class_candidates(0) == []


def test_l_class_order_formulas_consistent():
    for n in (60, 168, 360, 504, 660, 5616, 9828, 29120, 32736):
        for cand in l_class_candidates(n):
            assert cand.order() == n


def test_l_class_no_collisions_below_desk_scale():
    assert scan_order_collisions(10 ** 6) == []


def test_l_class_no_collisions_build_scale():
    # arithmetic-only scan, cheap enough to assert the full safety margin
    assert scan_order_collisions(10 ** 8) == []


# -- rarefied reports ----------------------------------------------------------------------


def test_rarefied_psl2_8(psl2_8):
    report = is_rarefied(psl2_8, 1)
    assert report.rarefied and report.rarefied_strict
    assert report.frattini_layers == [True, True]
    assert report.unique_minimal_layers == [True]
    assert report.component_layers == ["true"]


def test_rarefied_s5(s5):
    report = is_rarefied(s5, 1)
    assert not report.rarefied
    # the radical step above the socle is a 2-group, not the (trivial)
    # Frattini subgroup of the top quotient
    assert report.frattini_layers == [True, False]


def test_rarefied_s4_vacuous(s4):
    report = is_rarefied(s4, 0)
    assert report.lambda_matches
    assert report.rarefied
    assert report.frattini_layers == []


def test_rarefied_lambda_mismatch(a5):
    report = is_rarefied(a5, 2)
    assert not report.lambda_matches
    assert not report.rarefied


def test_rarefied_a5_conditional(a5):
    report = is_rarefied(a5, 1)
    assert report.rarefied
    assert report.conditional          # order 60 matches only with exponent 0
    assert not report.rarefied_strict


# -- dihedral class scans ---------------------------------------------------------------------


def test_dihedral_classes_a5(a5):
    reports = dihedral_class_check(a5, extra_auts=[Permutation.parse("(0 1)", 5)])
    assert reports[5].subgroup_count == 6
    assert reports[5].class_sizes == [6]
    assert reports[5].single_invariant_class
    assert reports[3].subgroup_count == 10
    assert reports[3].class_sizes == [10]
    assert reports[3].single_invariant_class


def test_dihedral_classes_a5_oracle(a5):
    # independent scan: dihedral subgroups of order 10 are 2-generated
    elems = list(closure_elements(5, a5.generators))
    found = set()
    for c in elems:
        if c.order() != 5:
            continue
        for t in elems:
            if t.order() != 2 or t.inverse() * c * t != c.inverse():
                continue
            sub = frozenset(closure_elements(5, [c, t]))
            assert len(sub) == 10
            found.add(sub)
    assert len(found) == 6


def test_dihedral_classes_psl2(psl2_7, psl2_8):
    rep7 = dihedral_class_check(psl2_7, extra_auts=[corpus.pgl2_extra_conjugator(7)])
    assert any(r.single_invariant_class for r in rep7.values())
    rep8 = dihedral_class_check(psl2_8, extra_auts=[corpus.frobenius_conjugator(8)])
    assert any(r.single_invariant_class for r in rep8.values())


def test_dihedral_classes_psl2_9():
    p9 = corpus.psl2(9)
    reports = dihedral_class_check(p9)
    assert any(len(r.class_sizes) == 1 for r in reports.values())


def test_dihedral_requires_simple(s4):
    with pytest.raises(ValueError):
        dihedral_class_check(s4)


# -- verbal subgroups ----------------------------------------------------------------------------


def test_verbal_commutator_s3(s3):
    result = verbal_subgroup(s3, parse_word("x1 x2 x1^-1 x2^-1"))
    assert result.exhaustive
    assert result.subgroup.order() == 3
    assert result.subgroup.same_group_as(s3.derived_subgroup())


def test_verbal_square_on_c2():
    result = verbal_subgroup(corpus.cyclic(2), parse_word("x1 x1"))
    assert result.exhaustive
    assert result.subgroup.is_trivial()


def test_verbal_identity_word(a5):
    result = verbal_subgroup(a5, parse_word("x1"))
    assert result.exhaustive
    assert result.subgroup.same_group_as(a5)


def test_verbal_sampled_lower_bound(a5_wr_a5):
    result = verbal_subgroup(a5_wr_a5, parse_word("x1 x1"), sample_budget=40)
    assert not result.exhaustive
    assert result.subgroup.order() <= a5_wr_a5.order()
    assert result.subgroup.order() > 1

"""Constructors, finite fields, persistence, and certificate re-verification."""

import itertools
import json

import pytest

from permlaw import corpus
from permlaw.errors import CertificateError, GroupFileError
from permlaw.gf import factor_prime_power, field
from permlaw.perms import Permutation
from permlaw.structure import minimal_normal_closures, solvable_radical


# -- natural families --------------------------------------------------------


@pytest.mark.parametrize("n,order", [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120), (6, 720)])
def test_symmetric_orders(n, order):
    assert corpus.symmetric(n).order() == order


@pytest.mark.parametrize("n,order", [(3, 3), (4, 12), (5, 60), (6, 360), (7, 2520)])
def test_alternating_orders(n, order):
    g = corpus.alternating(n)
    assert g.order() == order
    assert all(x.sign() == 1 for x in g.generators)


def test_cyclic_and_dihedral():
    assert corpus.cyclic(12).order() == 12
    assert corpus.dihedral(6).order() == 12
    assert corpus.dihedral(4).order() == 8


# -- finite fields --------------------------------------------------------------


def test_factor_prime_power():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(9) == (3, 2)
    assert factor_prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        factor_prime_power(12)


def _prime_powers_up_to(limit):
    out = []
    for q in range(2, limit + 1):
        try:
            factor_prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def test_field_axioms_small():
    for q in (4, 8, 9, 16, 25, 27):
        F = field(q)
        elems = list(F.elements())
        for a in elems:
            assert F.add(a, F.zero) == a
            assert F.mul(a, F.one) == a
            assert F.add(a, F.neg(a)) == F.zero
            if a != 0:
                assert F.mul(a, F.inv(a)) == F.one
        for a, b in itertools.product(elems[:9], repeat=2):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)


def test_frobenius_exhaustive_all_field_sizes():
    # x -> x^p must be additive and multiplicative in every constructed field
    for q in _prime_powers_up_to(512):
        F = field(q)
        frob = [F.pow(x, F.p) for x in range(q)]
        for a in range(q):
            fa = frob[a]
            for b in range(a, q):
                assert frob[F.add(a, b)] == F.add(fa, frob[b])
                assert frob[F.mul(a, b)] == F.mul(fa, frob[b])


def test_multiplicative_generator():
    for q in (3, 4, 5, 7, 8, 9, 13, 16, 27):
        F = field(q)
        g = F.multiplicative_generator()
        powers = {F.pow(g, i) for i in range(q - 1)}
        assert len(powers) == q - 1


# -- projective groups --------------------------------------------------------------


@pytest.mark.parametrize("q,order", [
    (2, 6), (3, 12), (4, 60), (5, 60), (7, 168), (8, 504),
    (9, 360), (11, 660), (13, 1092),
])
def test_psl2_orders(q, order):
    g = corpus.psl2(q)
    assert g.degree == q + 1
    assert g.order() == order


def test_psl2_two_transitive():
    for q in (4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32):
        g = corpus.psl2(q)
        # orbit of an ordered pair must be all ordered pairs
        pair = (0, 1)
        seen = {pair}
        frontier = [pair]
        while frontier:
            nxt = []
            for a, b in frontier:
                for gen in g.generators:
                    img = (gen[a], gen[b])
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        assert len(seen) == (q + 1) * q


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11, 13])
def test_psl2_simple(q):
    g = corpus.psl2(q)
    assert solvable_radical(g).is_trivial()
    minimals = minimal_normal_closures(g)
    assert len(minimals) == 1
    assert minimals[0].same_group_as(g)


def test_psl3_3():
    g = corpus.psl3_3()
    assert g.degree == 13
    assert g.order() == 5616
    assert g.is_transitive()
    assert g.is_perfect()


def test_pgl2_conjugator_normalises(psl2_7):
    aut = corpus.pgl2_extra_conjugator(7)
    assert aut not in psl2_7          # scaling by a non-square is outer
    for g in psl2_7.generators:
        assert g.conjugate(aut) in psl2_7


def test_frobenius_conjugator_normalises(psl2_8):
    aut = corpus.frobenius_conjugator(8)
    for g in psl2_8.generators:
        assert g.conjugate(aut) in psl2_8


# -- products ---------------------------------------------------------------------------


def test_direct_product(a5):
    g = corpus.direct_product(corpus.cyclic(6), a5)
    assert g.degree == 11
    assert g.order() == 360
    assert g.certificate.kind == "direct-product"


def test_wreath_certificate_checks(a5_wr_c2):
    cert = a5_wr_c2.certificate
    assert cert.kind == "imprimitive-wreath"
    base = a5_wr_c2.subgroup(cert.base_generators)
    assert a5_wr_c2.is_normal_subgroup(base)
    assert base.order() == 3600
    assert a5_wr_c2.order() == 7200


def test_wreath_requires_transitive_top():
    intransitive = corpus.direct_product(corpus.cyclic(2), corpus.cyclic(2))
    with pytest.raises(ValueError):
        corpus.wreath(corpus.alternating(5), intransitive)


def test_wreath_degree_cap():
    with pytest.raises(ValueError):
        corpus.wreath(corpus.symmetric(40), corpus.cyclic(30))


# -- persistence ---------------------------------------------------------------------------


def test_save_load_roundtrip(tmp_path, a5):
    path = tmp_path / "a5.json"
    corpus.save(a5, path)
    back = corpus.load(path)
    assert back.degree == a5.degree
    assert back.generators == a5.generators
    assert back.name == a5.name


def test_save_load_wreath_with_certificate(tmp_path):
    w = corpus.wreath(corpus.alternating(5), corpus.cyclic(2))
    path = tmp_path / "w.json"
    corpus.save(w, path)
    back = corpus.load(path)
    assert back.order() == 7200
    assert back.certificate is not None
    assert back.certificate.kind == "imprimitive-wreath"
    assert back.certificate.parts[0].order() == 60
    assert back.certificate.parts[1].order() == 2


def test_load_rejects_malformed_generator(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "name": "bad", "degree": 3, "generators": [[0, 0, 1]],
    }))
    with pytest.raises(GroupFileError) as err:
        corpus.load(path)
    assert "generator 0" in str(err.value)


def test_load_rejects_missing_fields(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"degree": 3}))
    with pytest.raises(GroupFileError) as err:
        corpus.load(path)
    assert "name" in str(err.value)


def test_load_rejects_stale_certificate(tmp_path):
    # tamper a wreath file: swap one base generator for a block-crossing
    # permutation, so the declared base is no longer correct
    w = corpus.wreath(corpus.alternating(5), corpus.cyclic(2))
    path = tmp_path / "w.json"
    corpus.save(w, path)
    doc = json.loads(path.read_text())
    crossing = Permutation.parse("(0 5)(1 6)(2 7)(3 8)(4 9)", 10)
    doc["certificate"]["base_generators"][0] = list(crossing.images)
    path.write_text(json.dumps(doc))
    with pytest.raises(CertificateError):
        corpus.load(path)


def test_load_rejects_non_normal_base(tmp_path):
    # keep blocks intact but declare a non-normal base subgroup
    w = corpus.wreath(corpus.alternating(5), corpus.cyclic(2))
    path = tmp_path / "w.json"
    corpus.save(w, path)
    doc = json.loads(path.read_text())
    three_cycle = Permutation.parse("(0 1 2)", 10)
    doc["certificate"]["base_generators"] = [list(three_cycle.images)]
    path.write_text(json.dumps(doc))
    with pytest.raises(CertificateError):
        corpus.load(path)


def test_make_dispatch():
    assert corpus.make("cyclic", n=5).order() == 5
    assert corpus.make("psl2", q=7).order() == 168
    with pytest.raises(ValueError):
        corpus.make("nonsense")

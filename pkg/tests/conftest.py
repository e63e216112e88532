import pytest

from permlaw import corpus


@pytest.fixture(scope="session")
def s3():
    return corpus.symmetric(3)


@pytest.fixture(scope="session")
def s4():
    return corpus.symmetric(4)


@pytest.fixture(scope="session")
def s5():
    return corpus.symmetric(5)


@pytest.fixture(scope="session")
def a4():
    return corpus.alternating(4)


@pytest.fixture(scope="session")
def a5():
    return corpus.alternating(5)


@pytest.fixture(scope="session")
def psl2_7():
    return corpus.psl2(7)


@pytest.fixture(scope="session")
def psl2_8():
    return corpus.psl2(8)


@pytest.fixture(scope="session")
def a5_wr_c2():
    return corpus.wreath(corpus.alternating(5), corpus.cyclic(2))


@pytest.fixture(scope="session")
def a5_wr_a5():
    return corpus.wreath(corpus.alternating(5), corpus.alternating(5))


@pytest.fixture(scope="session")
def q8():
    """Quaternion group in its regular action on 8 points."""
    return _quaternion_regular()


def _quaternion_regular():
    from permlaw.groups import PermGroup
    from permlaw.perms import Permutation

    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    table = {
        ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
        ("i", "1"): "i", ("i", "i"): "-1", ("i", "j"): "k", ("i", "k"): "-j",
        ("j", "1"): "j", ("j", "i"): "-k", ("j", "j"): "-1", ("j", "k"): "i",
        ("k", "1"): "k", ("k", "i"): "j", ("k", "j"): "-i", ("k", "k"): "-1",
    }

    def mul(a, b):
        sa, ua = (1, a) if not a.startswith("-") else (-1, a[1:])
        sb, ub = (1, b) if not b.startswith("-") else (-1, b[1:])
        r = table[(ua, ub)]
        sr, ur = (1, r) if not r.startswith("-") else (-1, r[1:])
        s = sa * sb * sr
        return ur if s > 0 else "-" + ur

    idx = {l: n for n, l in enumerate(labels)}

    def right_mult(b):
        return Permutation([idx[mul(a, b)] for a in labels])

    return PermGroup(8, [right_mult("i"), right_mult("j")], name="q8")

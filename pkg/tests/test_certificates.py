"""Certificate serialization and the independent validator, including a
mutated-certificate negative corpus."""

import json

import pytest

from permlaw import corpus
from permlaw.certificates import TrajectoryCertificate, validate_certificate
from permlaw.perms import Permutation
from permlaw.trajectories import SearchMode, SearchOutcome, search_certificate
from permlaw.words import parse_word


@pytest.fixture()
def a5_cert(a5):
    result = search_certificate(a5, parse_word("x1 x2"), SearchMode.SYLOW2, seed=1)
    assert result.outcome is SearchOutcome.FOUND
    return result.certificate


def test_roundtrip_via_dict(a5, a5_cert):
    back = TrajectoryCertificate.from_dict(a5_cert.to_dict())
    assert back.word == a5_cert.word
    assert back.omega == a5_cert.omega
    assert back.tuple_entries == a5_cert.tuple_entries
    assert back.trajectory == a5_cert.trajectory
    assert back.sylow_generators == a5_cert.sylow_generators
    assert validate_certificate(back, a5, require_sylow=True).ok


def test_roundtrip_via_file(tmp_path, a5, a5_cert):
    path = tmp_path / "cert.json"
    a5_cert.save(path)
    back = TrajectoryCertificate.load(path)
    assert validate_certificate(back, a5, require_sylow=True).ok
    doc = json.loads(path.read_text())
    assert set(doc) >= {"word", "omega", "tuple", "trajectory", "sylow_generators"}


def test_validator_rejects_flipped_trajectory_point(a5, a5_cert):
    mutated = TrajectoryCertificate.from_dict(a5_cert.to_dict())
    traj = list(mutated.trajectory)
    traj[1] = (traj[1] + 1) % a5.degree if (traj[1] + 1) % a5.degree != traj[0] else (traj[1] + 2) % a5.degree
    mutated.trajectory = tuple(traj)
    result = validate_certificate(mutated, a5)
    assert not result.ok
    assert any("trajectory" in p for p in result.problems)


def test_validator_rejects_out_of_sylow_entry(a5, a5_cert):
    mutated = TrajectoryCertificate.from_dict(a5_cert.to_dict())
    # a 3-cycle can never lie in a Sylow 2-subgroup
    outsider = Permutation.parse("(0 1 2)", 5)
    entries = list(mutated.tuple_entries)
    entries[0] = outsider
    mutated.tuple_entries = tuple(entries)
    # keep the recorded trajectory consistent so only the witness check fires
    from permlaw.trajectories import trajectory as traj_of
    mutated.trajectory = tuple(traj_of(a5, mutated.omega, mutated.word, mutated.tuple_entries))
    result = validate_certificate(mutated, a5, require_sylow=True)
    if result.ok:  # the mutated trajectory may have collided; both are rejections
        raise AssertionError("validator accepted an out-of-witness tuple entry")
    assert any("sift" in p or "distinct" in p for p in result.problems)


def test_validator_rejects_nonmember_entry(a5, a5_cert):
    mutated = TrajectoryCertificate.from_dict(a5_cert.to_dict())
    entries = list(mutated.tuple_entries)
    entries[0] = Permutation.parse("(0 1)", 5)      # odd: outside the group
    mutated.tuple_entries = tuple(entries)
    result = validate_certificate(mutated, a5)
    assert not result.ok


def test_validator_rejects_wrong_witness_order(a5, a5_cert):
    mutated = TrajectoryCertificate.from_dict(a5_cert.to_dict())
    mutated.sylow_generators = (Permutation.parse("(0 1)(2 3)", 5),)  # order 2 < 4
    result = validate_certificate(mutated, a5, require_sylow=True)
    assert not result.ok
    assert any("2-part" in p for p in result.problems)


def test_validator_requires_witness_when_asked(a5, a5_cert):
    mutated = TrajectoryCertificate.from_dict(a5_cert.to_dict())
    mutated.sylow_generators = None
    assert validate_certificate(mutated, a5).ok
    assert not validate_certificate(mutated, a5, require_sylow=True).ok


def test_negative_corpus_rejection_rate(a5):
    # acceptance-style sweep: every mutation must be rejected
    produced = []
    for seed in range(4):
        for word_text in ("x1", "x1 x2"):
            res = search_certificate(a5, parse_word(word_text), SearchMode.SYLOW2, seed=seed)
            produced.append(res.certificate)
    rejected = 0
    total = 0
    for cert in produced:
        flipped = TrajectoryCertificate.from_dict(cert.to_dict())
        traj = list(flipped.trajectory)
        traj[-1] = traj[0]
        flipped.trajectory = tuple(traj)
        total += 1
        rejected += not validate_certificate(flipped, a5).ok
        bad_entry = TrajectoryCertificate.from_dict(cert.to_dict())
        entries = list(bad_entry.tuple_entries)
        entries[0] = Permutation.parse("(0 1 2 3 4)", 5)      # odd-order element
        bad_entry.tuple_entries = tuple(entries)
        total += 1
        rejected += not validate_certificate(bad_entry, a5, require_sylow=True).ok
    assert rejected == total

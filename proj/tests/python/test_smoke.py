from fractions import Fraction
from pathlib import Path

import pytest

import tauseq

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "oeis_fixture.txt"
EXAMPLE_ONE = [1, 1, 1, 1, 1, 1, 1, 1, 2, 3, 4, 5, 9, 18, 34, 93, 180, 348, 724, 3033, 9666, 24986, 83761, 261033]


def test_derive_and_generate_example_one():
    d = tauseq.derive([[5, -2, -2, -1], [1, 1, -1, -1]])
    assert d["key"] == "+(4,4)-(8,0)+(7,1)"
    assert d["recurrence"]["pairs"] == [[0, 0], [4, -4], [3, -3]]
    run = tauseq.generate(d, 24)
    assert run["status"] == "ok"
    assert run["terms"] == EXAMPLE_ONE


def test_example_two_tail():
    run = tauseq.generate(tauseq.derive([[1, 3, -3, -1], [0, 1, 2, -3]]), 28)
    assert run["terms"][-3:] == [1785, 4270, 9483]


def test_polygon_matches_matrix():
    assert tauseq.derive_polygon([(0, 0), (5, 1), (3, 2), (1, 1)])["key"] == "+(4,4)-(8,0)+(7,1)"


def test_fractional_seed_gives_fractions():
    run = tauseq.generate({"pairs": [[0, 0], [4, -4], [3, -3]], "signs": [1, -1, 1]}, 12, init=[3] + [1] * 7)
    assert run["status"] == "non-integral"
    assert any(isinstance(t, Fraction) for t in run["terms"])


def test_torsion_carries_invariant_factors():
    with pytest.raises(tauseq.TorsionError) as info:
        tauseq.derive([[2, -2, 0, 0], [0, 0, 1, -1]])
    assert info.value.invariant_factors == [2]
    assert isinstance(info.value, tauseq.Error)


def test_error_classes():
    with pytest.raises(tauseq.RankError):
        tauseq.derive([[1, -1, 0, 0], [2, -2, 0, 0]])
    with pytest.raises(tauseq.LatticeError):
        tauseq.derive([[1, 1, 0, 0], [0, 1, -1, 0]])
    with pytest.raises(tauseq.UnsolvableError):
        tauseq.generate({"pairs": [[2, 0], [2, 1], [1, 1]], "signs": [1, -1, 1]}, 10)
    with pytest.raises(tauseq.WindowError):
        tauseq.verify("states", cutoff=2)


def test_maya_roundtrip():
    m = tauseq.maya_from_young([4, 2, 2, 1], 0)
    assert m["added"] == ["7/2", "1/2"]
    assert tauseq.young_from_maya(m) == ([4, 2, 2, 1], 0)
    for charge in (-2, 0, 3):
        assert tauseq.young_from_maya(tauseq.maya_from_young([], charge)) == ([], charge)


@pytest.mark.parametrize("check", ["plucker", "plucker4", "octahedron", "kp", "states"])
def test_verify_checks_pass(check):
    report = tauseq.verify(check, seed=5, trials=10)
    assert report["failures"] == 0


def test_plucker4_verbatim_reading_fails():
    assert tauseq.verify("plucker4", seed=1, trials=5)["verbatim"]["failures"] == 5


def test_kp_on_schur():
    assert tauseq.kp_residual_of_schur([3, 1]) == "0"
    assert tauseq.schur([1], 3) == "t1"


def test_match_against_fixture():
    # leading ones are trimmed, so the hit starts at the entry's ninth term
    assert tauseq.match(EXAMPLE_ONE, FIXTURE) == [("A018896", 8)]
    with pytest.raises(tauseq.QueryTooShort):
        tauseq.match([1, 1, 2, 3], FIXTURE)


def test_small_scan():
    records, summary = tauseq.scan(bound=2, oeis_path=FIXTURE, workers=1)
    assert summary["sequences"] == sum(1 for r in records if "key" in r)
    assert summary["total"] == len(records) + summary["duplicates"]

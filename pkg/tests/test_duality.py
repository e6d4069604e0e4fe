import random

import pytest

from momentangle.duality import (SpherePairInstance, ad_check, ad_sweep, complementary_instance,
                                 duality_check, random_sphere_instance)
from momentangle.exactlin import make_field
from momentangle.simplicial import from_facets

Q = make_field("rationals")
TWO_POINTS = from_facets(2, [[1], [2]])


def test_complement_examples():
    S = SpherePairInstance(TWO_POINTS, ((1, 1), (1, 1)), Q)
    C = complementary_instance(S)
    assert C.K == from_facets(2, [])
    assert C.params == ((1, 0), (1, 0))
    E = complementary_instance(SpherePairInstance(from_facets(3, []), ((1, 0),) * 3, Q))
    assert len(E.K.faces) == 7 and 0b111 not in E.K.faces


def test_complement_is_an_involution():
    rng = random.Random(0)
    for _ in range(20):
        S = random_sphere_instance(rng)
        assert complementary_instance(complementary_instance(S)) == S


def test_parameter_validation():
    with pytest.raises(ValueError):
        SpherePairInstance(TWO_POINTS, ((1, 2), (1, 1)), Q)
    with pytest.raises(ValueError):
        SpherePairInstance(TWO_POINTS, ((1, 1),), Q)


def test_two_points_pairing():
    S = SpherePairInstance(TWO_POINTS, ((2, 1), (2, 1)), Q)
    rep = duality_check(S)
    assert rep["passed"]
    assert rep["R"] == 6
    assert all(r["omega"] for r in rep["pairs"])
    assert rep["observed_offsets"] == [rep["expected_offset"]]


def test_mirror_reports():
    rng = random.Random(1)
    for _ in range(8):
        S = random_sphere_instance(rng, max_m=4)
        a, b = duality_check(S), duality_check(complementary_instance(S))
        assert a["passed"] and b["passed"]
        assert len(a["pairs"]) == len(b["pairs"])


def test_combinatorial_examples():
    r = ad_check(TWO_POINTS, 2)
    assert r["betti"] == {0: 1} and r["dual_betti"] == {-1: 1} and r["ok"]
    r = ad_check(from_facets(3, [[1, 2], [2, 3], [1, 3]]), 3)
    assert r["betti"] == {1: 1} and r["dual_betti"] == {-1: 1} and r["ok"]
    for m in (2, 3, 4, 5):
        r = ad_check(from_facets(m, []), m)
        assert r["dual_betti"] == {m - 2: 1} and r["ok"]


def test_empty_ground_set_has_no_consistent_shift():
    r = ad_check(from_facets(0, []), 0)
    assert not r["ok"]


def test_sweep():
    rep = ad_sweep(exhaustive=3, samples=20, seed=2, F="prime 2")
    assert rep["ok"] and rep["checked"] == 3 + 6 + 20 + 20

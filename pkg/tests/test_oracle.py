import pytest

from momentangle import structure
from momentangle.chains import reduced_betti
from momentangle.corpus import edge_two_points
from momentangle.exactlin import make_field
from momentangle.factors import disk_sphere, sphere_pair
from momentangle.hochster import Instance, kunneth_A
from momentangle.oracle import (BlockComplex, block_size, compare, instance_pairs, oracle_betti,
                                oracle_mult_ranks, simplicial_version, sphere_model)
from momentangle.simplicial import from_facets

Q = make_field("rationals")
TWO_POINTS = from_facets(2, [[1], [2]])
SQUARE = from_facets(4, [[1, 2], [2, 3], [3, 4], [1, 4]])


def disks(K, F=Q):
    return Instance(F, K, [disk_sphere(2, F)] * K.m)


def test_golden_betti():
    assert oracle_betti(disks(TWO_POINTS)) == {0: 1, 3: 1}
    assert oracle_betti(disks(SQUARE)) == {0: 1, 3: 2, 6: 1}
    empty = disks(from_facets(3, []))
    assert oracle_betti(empty) == kunneth_A(empty)


def test_block_complex_is_a_complex():
    B = BlockComplex(Q, SQUARE, instance_pairs(disks(SQUARE)))
    C = B.complex
    for n in C.d:
        if n - 1 in C.d:
            assert (C.d[n - 1] @ C.d[n]).is_zero()
    assert B.size == block_size(instance_pairs(disks(SQUARE)), SQUARE)


def test_size_guard():
    with pytest.raises(ValueError, match="limit"):
        BlockComplex(Q, SQUARE, instance_pairs(disks(SQUARE)), limit=10)


def test_golden_mult_ranks():
    r = oracle_mult_ranks(disks(SQUARE))
    assert r[(3, 3)] == 1
    assert r[(0, 3)] == r[(3, 0)] == 2
    assert oracle_mult_ranks(disks(TWO_POINTS))[(3, 3)] == 0


def test_unit_row_has_full_rank():
    for I in (disks(SQUARE), Instance(Q, TWO_POINTS, [edge_two_points(Q)] * 2)):
        b = oracle_betti(I)
        r = oracle_mult_ranks(I)
        for q, dim in b.items():
            assert r[(0, q)] == dim == r[(q, 0)]


@pytest.mark.parametrize("r, k", [(0, 0), (1, 0), (1, 1), (2, 1), (3, 2)])
def test_sphere_models(r, k):
    P = sphere_model(r, k)
    assert reduced_betti(P.X, Q) == {r + 1: 1}
    assert reduced_betti(P.A, Q) == {k: 1}


def test_sphere_pairs_through_join_models():
    fd = sphere_pair(1, 1, Q)
    I = Instance(Q, TWO_POINTS, [fd, fd])
    S = simplicial_version(I)
    assert [f.provenance["kind"] for f in S.factors] == ["sphere_pair"] * 2
    assert compare(I)["ok"]


def test_field_sweep_agrees():
    tables = []
    for F in ("rationals", "prime 2", "prime 3"):
        F = make_field(F)
        rep = compare(disks(SQUARE, F))
        assert rep["ok"]
        tables.append((rep["oracle"], rep["mult_ranks"]))
    assert tables[0] == tables[1] == tables[2]


def test_corrupted_coproduct_sign_is_caught(monkeypatch):
    """Flip the sign of one ordered cross term of Δ^T; the ring comparison must notice."""
    I = disks(SQUARE)
    assert compare(I)["rings_agree"]
    original = structure.delta_T

    def corrupted(I, x):
        u = I.unit()
        return {k: (-v if k[0] != u and k[1] != u and k[0] < k[1] else v)
                for k, v in original(I, x).items()}

    monkeypatch.setattr(structure, "delta_T", corrupted)
    rep = compare(I)
    assert not rep["rings_agree"]
    assert rep["commutator_ranks"] != rep["oracle_commutator_ranks"]

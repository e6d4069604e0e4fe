import random

import pytest

from momentangle.corpus import disk_point, edge_two_points
from momentangle.exactlin import make_field
from momentangle.factors import disk_sphere, sphere_pair
from momentangle.hochster import Instance, betti
from momentangle.simplicial import from_facets, random_complex
from momentangle.structure import (SimplexCover, all_simplices_cover, check_cocommutativity, components,
                                   cover_complex, facet_cover, delta_T, homology_coproduct, nerve_agreement)

Q = make_field("rationals")
TWO_POINTS = from_facets(2, [[1], [2]])
SQUARE = from_facets(4, [[1, 2], [2, 3], [3, 4], [1, 4]])


def test_simplex_covers():
    assert all_simplices_cover(TWO_POINTS).simplices == (0, 1, 2)
    assert all_simplices_cover(from_facets(2, [])).simplices == (0,)
    with pytest.raises(ValueError):
        SimplexCover((0, 1), TWO_POINTS)


def test_cover_complex_of_empty_complex():
    I = Instance(Q, from_facets(2, []), [sphere_pair(1, 1, Q)] * 2)
    cc = cover_complex(I)
    assert cc.homology_totals() == {0: 1, 1: 2, 2: 1}
    assert not cc.coproduct_defects()


def test_components_two_points():
    ds = disk_sphere(2, Q)
    I = Instance(Q, TWO_POINTS, [ds, ds])
    cs = components(I)
    top = (ds.kernel[0], ds.kernel[0])
    comp = cs.by_x[top]
    assert comp.mu_max == 0b111
    assert comp.killed == frozenset({0, 0b010, 0b100})
    assert comp.relhom.dims == {1: 1}
    assert comp.degree + 1 == 3
    unit = cs.by_x[I.unit()]
    assert unit.killed == frozenset({0}) and unit.relhom.dims == {0: 1}
    assert cs.totals() == {0: 1, 3: 1}
    assert not nerve_agreement(cs)


def test_delta_T_examples():
    fd = sphere_pair(1, 1, Q)
    I = Instance(Q, TWO_POINTS, [fd, fd])
    u, a = fd.unit, fd.kernel[0]
    assert delta_T(I, (u, u)) == {((u, u), (u, u)): 1}
    assert delta_T(I, (a, u)) == {((a, u), (u, u)): 1, ((u, u), (a, u)): 1}
    both = delta_T(I, (a, a))
    assert both[((u, a), (a, u))] == -1      # two odd classes pass each other
    assert both[((a, u), (u, a))] == 1


def test_square_ring():
    I = Instance(Q, SQUARE, [disk_sphere(2, Q)] * 4)
    T = homology_coproduct(I)
    assert T.betti() == {0: 1, 3: 2, 6: 1}
    prods = T.products()
    threes = T.by_degree()[3]
    top = T.by_degree()[6][0]
    nonzero = {(a, b) for (a, b), v in prods.items() if a in threes and b in threes and v.get(top)}
    assert nonzero == {(threes[0], threes[1]), (threes[1], threes[0])}
    assert T.mult_ranks()[(3, 3)] == 1
    for h in range(len(T.basis)):
        assert T.coproduct[h].get((h, T.unit)) == 1
        assert T.coproduct[h].get((T.unit, h)) == 1


def test_sphere_pair_products_need_disjoint_supports():
    rng = random.Random(3)
    for _ in range(6):
        m = rng.randint(2, 3)
        K = random_complex(rng, m)
        I = Instance(Q, K, [sphere_pair(rng.randint(1, 2), 1, Q) for _ in range(m)])
        T = homology_coproduct(I)
        for (a, b), terms in T.products().items():
            if not terms:
                continue
            _, s1, w1, _, _ = T.basis[a]
            _, s2, w2, _, _ = T.basis[b]
            assert not (s1 & s2) and not (w1 & w2)


def test_commutativity_check_passes_for_spheres():
    rng = random.Random(4)
    for _ in range(5):
        m = rng.randint(1, 3)
        I = Instance(Q, random_complex(rng, m), [sphere_pair(2, 1, Q)] * m)
        assert check_cocommutativity(I)["status"] == "pass"


def test_commutativity_check_reports_failed_hypothesis():
    # a loop of A away from the base vertex: its coproduct involves [2] = unit + kernel
    from momentangle.factors import SimplicialPair, analyze_pair
    X = from_facets(4, [[1, 2], [2, 3], [3, 4], [2, 4]])
    A = from_facets(4, [[1], [2, 3], [3, 4], [2, 4]])
    fd = analyze_pair(SimplicialPair(X, A), Q)
    assert not fd.image_is_subcoalgebra()
    rep = check_cocommutativity(Instance(Q, from_facets(1, [[1]]), [fd]))
    assert rep == {"hypothesis": False, "status": "hypothesis fails"}


def test_single_factor_is_cocommutative():
    for fd in (disk_sphere(2, Q), edge_two_points(Q), disk_point(1, Q)):
        I = Instance(Q, from_facets(1, [[1]]), [fd])
        rep = check_cocommutativity(I)
        assert rep["status"] == "pass"


def test_cover_complex_matches_betti():
    rng = random.Random(5)
    for _ in range(6):
        m = rng.randint(1, 3)
        K = random_complex(rng, m)
        I = Instance(Q, K, [disk_sphere(1, Q)] * m)
        cc = cover_complex(I)
        assert cc.homology_totals() == betti(I).totals
        assert not cc.coproduct_defects(limit=1)


def test_kernel_in_eta_starves_the_component():
    # K = the full edge.  With the facet cover η_{μ_max} = {1,2} meets every ω ≠ φ,
    # so those components are dropped; the all-simplices cover keeps them with
    # zero relative homology instead.
    ds = disk_sphere(2, Q)
    I = Instance(Q, from_facets(2, [[1, 2]]), [ds, ds])
    cs = components(I, facet_cover(I.K))
    assert cs.totals() == {0: 1}
    assert {w for _, _, w in cs.dropped} == {1, 2, 3}
    full = components(I, all_simplices_cover(I.K))
    assert not full.dropped
    assert full.totals() == {0: 1}

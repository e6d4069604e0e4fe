import random

import pytest
from hypothesis import given, settings, strategies as st

from momentangle.simplicial import (SimplicialComplex, all_complexes, alexander_dual, from_facets,
                                    hochster_link, link, mask_of, random_complex, restrict, star,
                                    vertices_of, void)


def faces(*lists):
    return frozenset(mask_of(f) for f in lists)


PATH = from_facets(3, [[1, 2], [2, 3]])
SQUARE = from_facets(4, [[1, 2], [2, 3], [3, 4], [1, 4]])
TWO_POINTS = from_facets(2, [[1], [2]])


def test_closure_and_void():
    assert PATH.faces == faces([], [1], [2], [3], [1, 2], [2, 3])
    assert from_facets(3, []).faces == faces([])
    assert from_facets(3, [], void=True).is_void
    with pytest.raises(ValueError):
        from_facets(2, [[3]])
    with pytest.raises(ValueError, match="closed"):
        SimplicialComplex(2, [mask_of([1, 2])])


def test_facets_and_masks():
    assert SQUARE.facets() == [mask_of(f) for f in ([1, 2], [2, 3], [1, 4], [3, 4])]
    assert vertices_of(mask_of([4, 1])) == [1, 4]
    assert SQUARE.dim == 1 and void(2).dim is None


def test_link_star_restrict():
    assert link(PATH, mask_of([2])).faces == faces([], [1], [3])
    assert link(PATH, 0) == PATH
    assert link(SQUARE, mask_of([1])).faces == faces([], [2], [4])
    assert star(PATH, mask_of([2])) == PATH
    assert star(PATH, 0) == PATH
    assert star(TWO_POINTS, mask_of([1])).faces == faces([], [1])
    assert restrict(SQUARE, mask_of([1, 3])).faces == faces([], [1], [3])
    assert restrict(SQUARE, 0b1111) == SQUARE
    assert restrict(void(3), 0b101).is_void
    with pytest.raises(ValueError):
        link(TWO_POINTS, mask_of([1, 2]))


def test_hochster_link_examples():
    assert hochster_link(SQUARE, mask_of([1]), mask_of([3])).faces == faces([])
    assert hochster_link(SQUARE, 0, 0b1111) == SQUARE
    assert hochster_link(TWO_POINTS, 0, 0b11) == TWO_POINTS
    with pytest.raises(ValueError):
        hochster_link(SQUARE, 1, 1)


def test_alexander_dual_examples():
    m = 3
    full = (1 << m) - 1
    assert alexander_dual(from_facets(m, [])).faces == frozenset(range(full))
    assert alexander_dual(void(m)).faces == frozenset(range(full + 1))
    assert alexander_dual(TWO_POINTS, 2).faces == faces([])


def test_all_complexes_counts():
    # downsets of the Boolean lattice minus the empty set, plus the void complex
    assert [len(all_complexes(t)) for t in range(4)] == [2, 3, 6, 20]
    assert len(set(all_complexes(3))) == 20


complexes = st.integers(0, 5).flatmap(
    lambda m: st.integers(0, 2 ** 31).map(lambda seed: random_complex(random.Random(seed), m)))


@settings(max_examples=150, deadline=None)
@given(complexes)
def test_dual_is_an_involution(K):
    assert alexander_dual(alexander_dual(K)) == K


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2 ** 31))
def test_dual_turns_union_into_intersection(m, seed):
    rng = random.Random(seed)
    K, L = random_complex(rng, m), random_complex(rng, m)
    assert alexander_dual(K.union(L)) == alexander_dual(K).intersection(alexander_dual(L))


@settings(max_examples=100, deadline=None)
@given(complexes)
def test_links_are_complexes(K):
    for s in K.simplices:
        SimplicialComplex(K.m, link(K, s).faces)
        SimplicialComplex(K.m, star(K, s).faces)
        assert link(K, s).faces <= star(K, s).faces

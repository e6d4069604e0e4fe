"""Random instances for cross-checking the pipelines against the oracle."""
from __future__ import annotations

import random

from .chains import augmented_complex, homology
from .exactlin import make_field
from .factors import SimplicialPair, analyze_pair, disk_sphere, sphere_pair
from .hochster import Instance
from .oracle import block_size, sphere_model
from .simplicial import SimplicialComplex, from_facets, random_complex, subsets
from .structure import MAX_COVER

FIELDS = ("rationals", "prime 2", "prime 3")


def disk_point(d, F):
    """(Δ^d, a vertex)."""
    X = from_facets(d + 1, [list(range(1, d + 2))])
    A = from_facets(d + 1, [[1]])
    return analyze_pair(SimplicialPair(X, A), F)


def edge_two_points(F):
    return analyze_pair(SimplicialPair(from_facets(2, [[1, 2]]), from_facets(2, [[1], [2]])), F)


def factor_menu(F, simplicial_only=False):
    """(label, constructor) pairs; constructors return FactorData."""
    menu = []
    for d in (1, 2, 3):
        menu.append((f"disk_sphere {d}", lambda d=d: disk_sphere(d, F)))
        menu.append((f"disk_point {d}", lambda d=d: disk_point(d, F)))
    menu.append(("edge_two_points", lambda: edge_two_points(F)))
    if not simplicial_only:
        for r in range(4):
            for k in range(r + 1):
                menu.append((f"sphere_pair {r} {k}", lambda r=r, k=k: sphere_pair(r, k, F)))
    return menu


def _model_pair(fd):
    if fd.pair is not None:
        return fd.pair
    p = fd.provenance
    return sphere_model(p["r"], p["k"])


def random_facets_complex(rng: random.Random, m: int):
    """Downward closure of 1..m+1 random facets of size 1..3 (occasionally {φ})."""
    if rng.random() < 0.05:
        return from_facets(m, [])
    facets = []
    for _ in range(rng.randint(1, m + 1)):
        size = rng.randint(1, min(3, m))
        facets.append(rng.sample(range(1, m + 1), size))
    return from_facets(m, facets)


STRUCTURED = (
    (4, [[1, 2], [2, 3], [3, 4], [1, 4]]),
    (5, [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]]),
    (4, [[1, 2], [3, 4]]),
    (4, [[1, 2], [2, 3], [1, 3], [4]]),
    (5, [[1, 2], [3, 4], [5]]),
    (4, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]),
    (3, [[1], [2], [3]]),
    (5, [[1, 2, 3], [3, 4], [4, 5], [3, 5]]),
)


def structured_complex(rng: random.Random, max_m: int):
    """Polygon boundaries, disjoint unions and ∂Δ^3: complexes with cup products."""
    options = [(m, f) for m, f in STRUCTURED if m <= max_m]
    # polygons carry the interesting products, so they are drawn three times as often
    weights = [3 if len(f) == m and all(len(e) == 2 for e in f) else 1 for m, f in options]
    m, facets = rng.choices(options, weights)[0]
    return from_facets(m, facets)


def random_instance(rng: random.Random, *, max_m=5, simplicial_only=False, field=None,
                    max_block=20000, max_cover=MAX_COVER, weigh=None, structured=0.25):
    """One random instance whose oracle complex has at most ``max_block`` generators.

    A fraction ``structured`` of the complexes comes from STRUCTURED.
    ``weigh`` maps a factor label to a sampling weight (uniform by default).
    Retries until the size budgets are met.
    """
    while True:
        F = make_field(field if field is not None else rng.choice(FIELDS))
        if max_m >= 3 and rng.random() < structured:
            K = structured_complex(rng, max_m)
            m = K.m
        else:
            m = rng.choice([k for k in (1, 2, 3, 3, 4, 4, 5, 5) if k <= max_m] or [max_m])
            K = random_facets_complex(rng, m)
        if len(K.faces) > max_cover and len(K.facets()) > max_cover:
            continue
        menu = factor_menu(F, simplicial_only)
        weights = [weigh(lab) for lab, _ in menu] if weigh else None
        labels, facs = [], []
        for _ in range(m):
            lab, make = rng.choice(menu) if not weights else rng.choices(menu, weights)[0]
            key = (lab, F)
            if key not in _CACHE:
                _CACHE[key] = make()
            labels.append(lab)
            facs.append(_CACHE[key])
        if block_size([_model_pair(fd) for fd in facs], K) > max_block:
            continue
        return Instance(F, K, facs), labels


_CACHE = {}


def favour_kernels(label):
    """Weights that make nontrivial products likely: (Δ^d, point) factors carry no
    kernel or cokernel and are drawn less often."""
    return 1 if label.startswith("disk_point") else 3


def corpus(seed, count, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


def random_pair(rng: random.Random, max_vertices=5):
    """A random simplicial pair A ⊆ X with X connected and A nonempty."""
    while True:
        n = rng.randint(1, max_vertices)
        X = random_complex(rng, n, p=0.5, max_facets=rng.randint(1, n + 2))
        if not X.vertex_mask:
            continue
        A_faces = set()
        for f in X.facets():
            if rng.random() < 0.5:
                continue
            if rng.random() < 0.5:
                f &= ~(1 << rng.randrange(n))
            A_faces.update(subsets(f))
        A_faces.add(0)
        A = SimplicialComplex(n, A_faces, check=False)
        if not A.vertex_mask:
            continue
        if homology(augmented_complex(X, make_field("rationals"), augmented=False)).dim(0) != 1:
            continue
        return SimplicialPair(X, A)

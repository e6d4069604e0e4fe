"""Abstract simplicial complexes on a ground set [m], simplices as bitmasks.

Vertex ``k`` (1-based) is bit ``k-1``.  The void complex ``{}`` has no
simplices at all; ``{φ}`` has only the empty simplex (mask 0).
"""
from __future__ import annotations

MAX_GROUND = 30


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> list[int]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subsets(mask: int):
    """All submasks of ``mask``, in increasing numeric order."""
    bits = [1 << (v - 1) for v in vertices_of(mask)]
    out = [0]
    for b in bits:
        out += [s | b for s in out]
    return sorted(out)


def _sort_key(mask):
    return (popcount(mask), mask)


def fmt_mask(mask: int) -> str:
    return "{" + ",".join(map(str, vertices_of(mask))) + "}"


class SimplicialComplex:
    """Downward closed family of subsets of [m] (or the void complex)."""

    __slots__ = ("m", "faces", "_sorted")

    def __init__(self, m, faces, *, check=True):
        if not 0 <= m <= MAX_GROUND:
            raise ValueError(f"ground set size {m} outside 0..{MAX_GROUND}")
        self.m = m
        self.faces = frozenset(faces)
        self._sorted = None
        if check:
            full = (1 << m) - 1
            for f in self.faces:
                if f & ~full:
                    raise ValueError(f"simplex {fmt_mask(f)} not inside [{m}]")
            for f in self.faces:
                g = f
                while g:
                    low = g & -g
                    if f & ~low not in self.faces:
                        raise ValueError(f"family not closed under faces at {fmt_mask(f)}")
                    g ^= low

    @property
    def is_void(self):
        return not self.faces

    @property
    def simplices(self):
        """Simplices sorted by (dimension, bitmask)."""
        if self._sorted is None:
            self._sorted = tuple(sorted(self.faces, key=_sort_key))
        return self._sorted

    def __contains__(self, mask):
        return mask in self.faces

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.simplices)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.m == other.m and self.faces == other.faces

    def __hash__(self):
        return hash((self.m, self.faces))

    @property
    def vertex_mask(self):
        v = 0
        for f in self.faces:
            v |= f
        return v

    @property
    def dim(self):
        if self.is_void:
            return None
        return max(popcount(f) for f in self.faces) - 1

    def facets(self):
        fs = self.faces
        out = []
        full = (1 << self.m) - 1
        for f in self.simplices:
            free = full & ~f
            maximal = True
            while free:
                low = free & -free
                if f | low in fs:
                    maximal = False
                    break
                free ^= low
            if maximal:
                out.append(f)
        return out

    def by_dimension(self):
        """dict dim -> list of simplices (dim -1 is the empty simplex)."""
        out = {}
        for f in self.simplices:
            out.setdefault(popcount(f) - 1, []).append(f)
        return out

    def union(self, other):
        _same_ground(self, other)
        return SimplicialComplex(self.m, self.faces | other.faces, check=False)

    def intersection(self, other):
        _same_ground(self, other)
        return SimplicialComplex(self.m, self.faces & other.faces, check=False)

    def to_json(self):
        return {"m": self.m, "facets": [vertices_of(f) for f in self.facets()],
                "void": self.is_void}

    def __repr__(self):
        if self.is_void:
            return f"SimplicialComplex(m={self.m}, {{}})"
        body = ",".join("φ" if f == 0 else fmt_mask(f) for f in self.simplices)
        return f"SimplicialComplex(m={self.m}, {{{body}}})"


def _same_ground(K, L):
    if K.m != L.m:
        raise ValueError("complexes live on different ground sets")


def _closure(masks):
    out = set()
    for f in masks:
        if f in out:
            continue
        out.update(subsets(f))
    return out


def from_facets(ground_size, facets, void=False) -> SimplicialComplex:
    """Downward closure of ``facets`` (1-based vertex lists) plus φ.

    ``void=True`` with no facets gives the void complex ``{}``.
    """
    masks = []
    for f in facets:
        f = list(f)
        for v in f:
            if not isinstance(v, int) or not 1 <= v <= ground_size:
                raise ValueError(f"vertex {v!r} outside the ground set [{ground_size}]")
        masks.append(mask_of(f))
    if void:
        if masks:
            raise ValueError("a void complex cannot have facets")
        return SimplicialComplex(ground_size, (), check=False)
    faces = _closure(masks)
    faces.add(0)
    return SimplicialComplex(ground_size, faces, check=False)


def from_masks(ground_size, masks) -> SimplicialComplex:
    """Downward closure of bitmask facets, always containing φ."""
    faces = _closure(masks)
    faces.add(0)
    return SimplicialComplex(ground_size, faces, check=False)


def full_simplex(ground_size, mask) -> SimplicialComplex:
    return SimplicialComplex(ground_size, subsets(mask), check=False)


def void(ground_size) -> SimplicialComplex:
    return SimplicialComplex(ground_size, (), check=False)


def _need_simplex(K, sigma):
    if sigma not in K.faces:
        raise ValueError(f"{fmt_mask(sigma)} is not a simplex of the complex")


def link(K: SimplicialComplex, sigma: int) -> SimplicialComplex:
    _need_simplex(K, sigma)
    fs = K.faces
    return SimplicialComplex(K.m, [e for e in fs if not e & sigma and e | sigma in fs],
                             check=False)


def star(K: SimplicialComplex, sigma: int) -> SimplicialComplex:
    _need_simplex(K, sigma)
    fs = K.faces
    return SimplicialComplex(K.m, [t for t in fs if t | sigma in fs], check=False)


def restrict(K: SimplicialComplex, omega: int) -> SimplicialComplex:
    return SimplicialComplex(K.m, {e & omega for e in K.faces}, check=False)


def hochster_link(K: SimplicialComplex, sigma: int, omega: int) -> SimplicialComplex:
    """link_K(σ) restricted to ω; its vertex set is ``result.vertex_mask``."""
    if sigma & omega:
        raise ValueError("σ and ω must be disjoint")
    return restrict(link(K, sigma), omega)


def alexander_dual(K: SimplicialComplex, m: int | None = None) -> SimplicialComplex:
    """{ [m] \\ σ : σ ⊆ [m], σ ∉ K }."""
    if m is None:
        m = K.m
    if K.vertex_mask & ~((1 << m) - 1):
        raise ValueError(f"complex does not live on [{m}]")
    full = (1 << m) - 1
    fs = K.faces
    return SimplicialComplex(m, [full & ~s for s in range(full + 1) if s not in fs],
                             check=False)


def all_complexes(m: int):
    """Every simplicial complex on ground set [m], void included (m ≤ 4 is practical)."""
    masks = list(range(1, 1 << m))
    masks.sort(key=_sort_key)
    out = [void(m)]

    # grow downsets by adding minimal-new elements in canonical order
    def rec(i, faces):
        if i == len(masks):
            out.append(SimplicialComplex(m, faces, check=False))
            return
        f = masks[i]
        rec(i + 1, faces)
        g = f
        ok = True
        while g:
            low = g & -g
            if f & ~low not in faces:
                ok = False
                break
            g ^= low
        if ok:
            rec(i + 1, faces | {f})

    rec(0, frozenset({0}))
    return out


def random_complex(rng, m, p=0.5, max_facets=None) -> SimplicialComplex:
    """Downward closure of randomly drawn subsets of [m] (never void)."""
    full = (1 << m) - 1
    k = max_facets if max_facets is not None else rng.randint(0, m + 1)
    fac = []
    for _ in range(k):
        s = 0
        for v in range(m):
            if rng.random() < p:
                s |= 1 << v
        fac.append(s & full)
    return from_masks(m, fac)

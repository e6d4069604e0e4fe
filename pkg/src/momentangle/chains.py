"""Simplicial chain complexes over a field and their homology.

Degree -1 is an ordinary degree: the augmented complex of ``{φ}`` is the
field in degree -1.  Boundaries use the alternating sign on the vertices in
increasing order.
"""
from __future__ import annotations

from .exactlin import Matrix, SpanSolver, vec_axpy
from .simplicial import SimplicialComplex, popcount, subsets, vertices_of


def simplex_faces(mask):
    """(sign, face) pairs of the simplicial boundary, sign = (-1)^position."""
    out = []
    sign = 1
    m = mask
    while m:
        low = m & -m
        out.append((sign, mask ^ low))
        sign = -sign
        m ^= low
    return out


class ChainComplex:
    """Finite chain complex: ordered labelled bases and boundary matrices.

    ``d[n]`` is the matrix of C_n -> C_{n-1}; it is present for every degree
    n with n-1 also in range.  d∘d = 0 is checked on construction.
    """

    def __init__(self, field, basis, d, *, check=True):
        self.field = field
        self.basis = {n: list(b) for n, b in basis.items()}
        self.d = dict(d)
        for n, M in self.d.items():
            if M.cols != len(self.basis.get(n, ())) or M.rows != len(self.basis.get(n - 1, ())):
                raise ValueError(f"boundary d_{n} has shape {M.shape}")
        if check:
            for n in self.d:
                if n - 1 in self.d and not (self.d[n - 1] @ self.d[n]).is_zero():
                    raise AssertionError(f"d∘d != 0 at degree {n}")

    @property
    def degrees(self):
        return sorted(n for n, b in self.basis.items() if b)

    def dim(self, n):
        return len(self.basis.get(n, ()))

    def boundary(self, n, chain):
        """Apply d_n to a sparse chain (dict index -> coefficient)."""
        M = self.d.get(n)
        if M is None:
            return {}
        return M.apply(chain)

    def index(self, n):
        return {lab: i for i, lab in enumerate(self.basis.get(n, ()))}


def complex_from_generators(field, basis, faces):
    """Build a complex from labelled generators; ``faces(label)`` yields
    (coef, face label) pairs and faces outside the given bases are dropped
    (this realises quotient complexes)."""
    idx = {n: {lab: i for i, lab in enumerate(b)} for n, b in basis.items()}
    d = {}
    for n, b in basis.items():
        below = idx.get(n - 1)
        if below is None:
            continue
        cols = []
        for lab in b:
            col = {}
            for coef, face in faces(lab):
                i = below.get(face)
                if i is not None:
                    vec_axpy(field, col, field(coef), {i: field.one})
            cols.append(col)
        d[n] = Matrix(field, len(basis[n - 1]), len(b), cols)
    return ChainComplex(field, basis, d)


def augmented_complex(K: SimplicialComplex, F, augmented=True) -> ChainComplex:
    """Simplicial chains of K; with ``augmented`` the empty simplex sits in degree -1."""
    basis = {}
    for s in K.simplices:
        n = popcount(s) - 1
        if n < 0 and not augmented:
            continue
        basis.setdefault(n, []).append(s)
    return complex_from_generators(F, basis, simplex_faces)


def relative_full_complex(mu: int, L, F) -> ChainComplex:
    """C_*(2^μ) / C_*(L), with φ always quotiented out (no degree -1 part)."""
    faces = L.faces if isinstance(L, SimplicialComplex) else frozenset(L)
    for f in faces:
        if f & ~mu:
            raise ValueError("the subcomplex is not contained in 2^μ")
    basis = {}
    for s in sorted(subsets(mu), key=lambda x: (popcount(x), x)):
        if s == 0 or s in faces:
            continue
        basis.setdefault(popcount(s) - 1, []).append(s)
    return complex_from_generators(F, basis, simplex_faces)


class HomologyData:
    """Homology of a ChainComplex with chosen cycle representatives.

    Per degree the representatives are the null space basis vectors of d_n
    that are independent modulo im d_{n+1}, taken first-come.
    """

    def __init__(self, C: ChainComplex):
        self.complex = C
        F = self.field = C.field
        self.reps = {}
        self._solver = {}
        self._nb = {}
        self._rep_cols = {}
        self._functional = {}
        for n in sorted(C.basis):
            N = C.dim(n)
            if n in C.d:
                cycles = SpanSolver(F, C.d[n].columns).null_combos
            else:
                cycles = [{i: F.one} for i in range(N)]
            s = SpanSolver(F)
            dn1 = C.d.get(n + 1)
            nb = 0
            if dn1 is not None:
                for col in dn1.columns:
                    s.add(col)
                nb = dn1.cols
            reps, cols = [], []
            for z in cycles:
                j = s.ncols
                if s.add(z):
                    reps.append(z)
                    cols.append(j)
            self.reps[n] = reps
            self._solver[n] = s
            self._nb[n] = nb
            self._rep_cols[n] = cols

    @property
    def dims(self):
        return {n: len(r) for n, r in self.reps.items() if r}

    def dim(self, n):
        return len(self.reps.get(n, ()))

    def total(self):
        return sum(len(r) for r in self.reps.values())

    def is_cycle(self, n, z):
        return not self.complex.boundary(n, z)

    def decompose(self, n, z):
        """Write the cycle z as sum c_i rep_i + d(w); returns (c, w), both sparse."""
        if not self.is_cycle(n, z):
            raise ValueError(f"chain is not a cycle in degree {n}")
        if not z:
            return {}, {}
        x = self._solver[n].solve(z)
        if x is None:
            raise AssertionError("cycle outside cycles span")
        nb = self._nb[n]
        w = {j: v for j, v in x.items() if j < nb}
        pos = {j: a for a, j in enumerate(self._rep_cols[n])}
        c = {pos[j]: v for j, v in x.items() if j >= nb}
        return c, w

    def coordinates(self, n, z):
        """Just the class coordinates of a cycle, as a dense list."""
        c, _ = self.decompose(n, z)
        return [c.get(a, self.field.zero) for a in range(self.dim(n))]

    def _extended(self, n):
        """Solver whose columns are: boundaries, cycle reps, then standard vectors
        completing a basis of C_n."""
        got = self._functional.get(n)
        if got is None:
            F = self.field
            s = self._solver[n]
            ext = SpanSolver(F)
            ext._basis = dict(s._basis)
            ext.ncols = s.ncols
            for i in range(self.complex.dim(n)):
                if ext.rank == self.complex.dim(n):
                    break
                ext.add({i: F.one})
            pos = {j: a for a, j in enumerate(self._rep_cols[n])}
            got = self._functional[n] = (ext, pos, {})
        return got

    def functional_at(self, n, i):
        """Values {class: value} of the cocycles dual to the representatives on
        the i-th chain basis element; they vanish on boundaries."""
        ext, pos, cache = self._extended(n)
        got = cache.get(i)
        if got is None:
            x = ext.solve({i: self.field.one})
            got = cache[i] = {pos[j]: v for j, v in x.items() if j in pos}
        return got

    def functional(self, n):
        """The dual cocycles on every chain basis element of degree n, as a list."""
        return [self.functional_at(n, i) for i in range(self.complex.dim(n))]


def homology(C: ChainComplex) -> HomologyData:
    return HomologyData(C)


def reduced_betti(K: SimplicialComplex, F) -> dict:
    """dim H̃_s(K) for all s with nonzero value (void -> {})."""
    if K.is_void:
        return {}
    return homology(augmented_complex(K, F)).dims


def induced_map(f, src: HomologyData, dst: HomologyData) -> dict:
    """Matrices (rows: dst classes, cols: src classes) of the map induced by a chain map.

    ``f`` maps degree -> Matrix from src chains to dst chains.
    """
    A, B = src.complex, dst.complex
    F = src.field
    for n in A.basis:
        M = f.get(n)
        lower = f.get(n - 1)
        for j in range(A.dim(n)):
            img = M.columns[j] if M is not None else {}
            lhs = B.boundary(n, img)
            rhs = lower.apply(A.d[n].columns[j]) if (lower is not None and n in A.d) else {}
            if lhs != rhs:
                raise ValueError(f"not a chain map in degree {n}")
    out = {}
    for n in sorted(set(src.reps) | set(dst.reps)):
        M = f.get(n)
        cols = []
        for z in src.reps.get(n, ()):
            img = M.apply(z) if M is not None else {}
            c, _ = dst.decompose(n, img)
            cols.append(c)
        out[n] = Matrix(F, dst.dim(n), src.dim(n), cols)
    return out


def aw_diagonal(mu: int) -> dict:
    """Front/back splittings of every nonempty simplex of 2^μ.

    {i0<..<is} -> [({i0..ik}, {ik..is}) for k = 0..s], all with sign +1.
    """
    out = {}
    for s in subsets(mu):
        if s == 0:
            continue
        out[s] = aw_split(s)
    return out


def aw_split(s):
    vs = vertices_of(s)
    out = []
    front = 0
    for k, v in enumerate(vs):
        front |= 1 << (v - 1)
        back = s & ~(front ^ (1 << (v - 1)))
        out.append((front, back))
    return out

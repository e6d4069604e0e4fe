"""Brute-force ground truth for simplicial-pair factors.

The chains of Z_K(X,A) are modelled by the span of ⊗_k C_*(Y_k^σ), σ ∈ K,
inside ⊗_k C_*(X_k): tuples of simplices whose non-A coordinates form a
simplex of K.  Nothing here uses the link decomposition.
"""
from __future__ import annotations

from itertools import product

from . import coalg
from .chains import aw_split, complex_from_generators, homology, simplex_faces
from .exactlin import make_field
from .factors import SimplicialPair, analyze_pair
from .hochster import Instance, betti, minimal_model
from .simplicial import SimplicialComplex, popcount, subsets

MAX_BLOCK = 200_000


def _pair_of(fd, k):
    P = fd.pair
    if P is None:
        raise ValueError(f"factor {k + 1} has no simplicial model")
    return P


def block_size(pairs, K) -> int:
    counts = []
    for P in pairs:
        xa = sum(1 for s in P.X.faces if s)
        a = sum(1 for s in P.A.faces if s)
        counts.append((a, xa - a))
    total = 0
    for pat in K.faces:
        c = 1
        for k, (a, rest) in enumerate(counts):
            c *= rest if pat >> k & 1 else a
        total += c
    return total


class BlockComplex:
    """Chains of Z_K(X,A) as a subcomplex of ⊗_k C_*(X_k) (no augmentation)."""

    def __init__(self, F, K: SimplicialComplex, pairs, limit=MAX_BLOCK):
        self.field = F = make_field(F)
        self.K = K
        self.pairs = list(pairs)
        if len(self.pairs) != K.m:
            raise ValueError("one simplicial pair per vertex of the ground set")
        size = block_size(self.pairs, K)
        if size > limit:
            raise ValueError(f"block complex has {size} generators, limit {limit}")
        self.size = size
        simp = []
        for P in self.pairs:
            simp.append([(s, s not in P.A.faces) for s in P.X.simplices if s])
        basis = {}
        for pat in sorted(K.faces):
            lists = [[s for s, out in simp[k] if out == bool(pat >> k & 1)]
                     for k in range(K.m)]
            for t in product(*lists):
                d = sum(popcount(s) for s in t) - len(t)
                basis.setdefault(d, []).append(t)
        for d in basis:
            basis[d].sort()
        self.complex = complex_from_generators(F, basis, self._faces)
        self._homology = None

    @staticmethod
    def _faces(t):
        out = []
        shift = 0
        for k, s in enumerate(t):
            if popcount(s) > 1:
                sg = -1 if shift % 2 else 1
                for c, f in simplex_faces(s):
                    out.append((sg * c, t[:k] + (f,) + t[k + 1:]))
            shift += popcount(s) - 1
        return out

    @property
    def homology(self):
        if self._homology is None:
            self._homology = homology(self.complex)
        return self._homology

    def betti(self):
        return dict(sorted(self.homology.dims.items()))

    def coproduct_table(self):
        """Homology coproduct: per-factor AW with ε = Σ_{u<v}|b_u||f_v|, read off
        with the dual cocycles.  Classes are numbered degree by degree."""
        H = self.homology
        F = self.field
        C = self.complex
        number, degrees = {}, []
        for d in sorted(H.reps):
            for a in range(H.dim(d)):
                number[(d, a)] = len(degrees)
                degrees.append(d)
        idx = {d: C.index(d) for d in C.basis}
        table = {}
        for d in sorted(H.reps):
            for a, z in enumerate(H.reps[d]):
                out = {}
                for i, c in z.items():
                    t = C.basis[d][i]
                    for splits in product(*[aw_split(s) for s in t]):
                        eps = 0
                        bsum = 0
                        df = db = 0
                        for f, b in splits:
                            fd_, bd_ = popcount(f) - 1, popcount(b) - 1
                            eps += bsum * fd_
                            bsum += bd_
                            df += fd_
                            db += bd_
                        coef = -c if eps % 2 else c
                        front = tuple(f for f, _ in splits)
                        back = tuple(b for _, b in splits)
                        xf = H.functional_at(df, idx[df][front])
                        if not xf:
                            continue
                        xb = H.functional_at(db, idx[db][back])
                        for a1, v1 in xf.items():
                            for a2, v2 in xb.items():
                                coalg._add(F, out, (number[(df, a1)], number[(db, a2)]), coef * v1 * v2)
                table[number[(d, a)]] = out
        return degrees, table


def instance_pairs(I: Instance):
    return [_pair_of(fd, k) for k, fd in enumerate(I.factors)]


def oracle_betti(I: Instance, limit=MAX_BLOCK):
    return BlockComplex(I.field, I.K, instance_pairs(I), limit).betti()


def oracle_mult_ranks(I: Instance, limit=MAX_BLOCK, commutators=False):
    """Product ranks of the brute-force cohomology ring; with ``commutators``
    also the graded commutator ranks, as a pair."""
    from .structure import commutator_rank_table, mult_rank_table
    B = BlockComplex(I.field, I.K, instance_pairs(I), limit)
    degrees, table = B.coproduct_table()
    by_degree = {}
    for h, d in enumerate(degrees):
        by_degree.setdefault(d, []).append(h)
    ranks = mult_rank_table(I.field, by_degree, table)
    if commutators:
        return ranks, commutator_rank_table(I.field, by_degree, table)
    return ranks


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join of complexes on disjoint ground sets; L's vertices are shifted past K's."""
    shift = K.m
    faces = [a | (b << shift) for a in K.faces for b in L.faces]
    return SimplicialComplex(K.m + L.m, faces, check=False)


def boundary_simplex(n: int) -> SimplicialComplex:
    """∂Δ^n on n+1 vertices."""
    full = (1 << (n + 1)) - 1
    return SimplicialComplex(n + 1, [s for s in subsets(full) if s != full], check=False)


def sphere_model(r: int, k: int) -> SimplicialPair:
    """(S^{r+1}, S^k) as ∂Δ^{k+1} * ∂Δ^{r-k+1} ⊇ ∂Δ^{k+1}."""
    if not 0 <= k <= r:
        raise ValueError(f"need 0 <= k <= r, got r={r}, k={k}")
    A0 = boundary_simplex(k + 1)
    X = join(A0, boundary_simplex(r - k + 1))
    A = SimplicialComplex(X.m, A0.faces, check=False)
    return SimplicialPair(X, A)


def sphere_model_factor(r: int, k: int, F):
    fd = analyze_pair(sphere_model(r, k), F)
    object.__setattr__(fd, "provenance", {"kind": "sphere_pair", "r": r, "k": k,
                                          "model": "join"})
    return fd


def simplicial_version(I: Instance) -> Instance:
    """Replace sphere_pair factors by their join models; other factors must be simplicial."""
    out = []
    for k, fd in enumerate(I.factors):
        if fd.pair is not None:
            out.append(fd)
        elif fd.provenance.get("kind") == "sphere_pair":
            out.append(sphere_model_factor(fd.provenance["r"], fd.provenance["k"], I.field))
        else:
            raise ValueError(f"factor {k + 1} has no simplicial model")
    return Instance(I.field, I.K, out)


def compare(I: Instance, *, rings=True, limit=MAX_BLOCK, check_cover=True) -> dict:
    """Run every pipeline and the oracle; report degreewise agreement."""
    from .structure import cover_complex, homology_coproduct
    report = {}
    report["hochster"] = betti(I).totals
    report["minimal_model"] = minimal_model(I)[1]
    table = homology_coproduct(I)
    report["components"] = table.betti()
    if check_cover:
        report["cover"] = cover_complex(I).homology_totals()
    S = simplicial_version(I)
    report["oracle"] = oracle_betti(S, limit)
    names = [k for k in ("hochster", "minimal_model", "components", "cover", "oracle") if k in report]
    report["betti_agree"] = all(report[k] == report["oracle"] for k in names)
    if rings:
        mine = table.mult_ranks()
        theirs, their_comm = oracle_mult_ranks(S, limit, commutators=True)
        report["mult_ranks"] = mine
        report["oracle_mult_ranks"] = theirs
        report["commutator_ranks"] = table.commutator_ranks()
        report["oracle_commutator_ranks"] = their_comm
        report["rings_agree"] = mine == theirs and report["commutator_ranks"] == their_comm
    report["ok"] = report["betti_agree"] and report.get("rings_agree", True)
    return report

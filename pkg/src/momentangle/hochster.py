"""Bigraded Betti numbers of Z_K(X,A) from the links K_{σ,ω}.

H_{k+1}^{σ,ω} = ⊕_{s+t=k} H̃_s(K_{σ,ω}) ⊗ T_t^{σ,ω}, summed over the index
set I_M.  ``minimal_model`` is an independent route to the same totals: a
small chain complex built from per-factor models U_k ⊇ S_k.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .chains import complex_from_generators, homology, reduced_betti
from .exactlin import Field
from .factors import FactorData
from .simplicial import SimplicialComplex, hochster_link, subsets


@dataclass(frozen=True, eq=False)
class Instance:
    field: Field
    K: SimplicialComplex
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) != self.K.m:
            raise ValueError(f"{len(self.factors)} factors for a ground set of size {self.K.m}")
        for j, fd in enumerate(self.factors):
            if not isinstance(fd, FactorData):
                raise TypeError(f"factor {j + 1} is not FactorData")
            if fd.field != self.field:
                raise ValueError(f"factor {j + 1} is over {fd.field}, instance over {self.field}")

    @property
    def m(self):
        return self.K.m

    @property
    def coker_support(self):
        """Σ: coordinates with a nonzero cokernel."""
        return sum(1 << k for k, fd in enumerate(self.factors) if fd.coker)

    @property
    def kernel_support(self):
        """Ω: coordinates with a nonzero kernel."""
        return sum(1 << k for k, fd in enumerate(self.factors) if fd.kernel)

    def degree(self, x):
        return sum(fd.degrees[a] for fd, a in zip(self.factors, x))

    def unit(self):
        return tuple(fd.unit for fd in self.factors)


def rho(I: Instance, x) -> int:
    """Coordinates of x lying in the cokernel part."""
    return sum(1 << k for k, (fd, a) in enumerate(zip(I.factors, x)) if fd.roles[a] == "c")


def varrho(I: Instance, x) -> int:
    """Coordinates of x lying in the kernel part."""
    return sum(1 << k for k, (fd, a) in enumerate(zip(I.factors, x)) if fd.roles[a] == "k")


def index_set(I: Instance):
    """I_M in (σ, ω) bitmask order."""
    Sig, Om = I.coker_support, I.kernel_support
    out = []
    for s in sorted(f for f in I.K.faces if not f & ~Sig):
        for w in subsets(Om & ~s):
            out.append((s, w))
    return out


def t_basis(I: Instance, sigma: int, omega: int):
    """Tensor basis of T^{σ,ω}, sorted by (degree, tuple)."""
    choices = []
    for k, fd in enumerate(I.factors):
        bit = 1 << k
        role = "c" if sigma & bit else "k" if omega & bit else "i"
        choices.append(fd.of_role(role))
    xs = list(product(*choices))
    xs.sort(key=lambda x: (I.degree(x), x))
    return xs


def t_dims(I: Instance, sigma: int, omega: int):
    """dim T_t^{σ,ω} per degree t, without enumerating tuples."""
    poly = {0: 1}
    for k, fd in enumerate(I.factors):
        bit = 1 << k
        role = "c" if sigma & bit else "k" if omega & bit else "i"
        per = {}
        for j in fd.of_role(role):
            per[fd.degrees[j]] = per.get(fd.degrees[j], 0) + 1
        nxt = {}
        for a, u in poly.items():
            for b, v in per.items():
                nxt[a + b] = nxt.get(a + b, 0) + u * v
        poly = nxt
    return poly


@dataclass
class BettiTable:
    pairs: dict      # (σ, ω) -> {degree: dim}
    totals: dict     # degree -> dim

    def totals_list(self):
        if not self.totals:
            return []
        top = max(self.totals)
        return [self.totals.get(d, 0) for d in range(top + 1)]

    def pair_dims(self, sigma, omega):
        return self.pairs.get((sigma, omega), {})


def _add_into(acc, d, v):
    if v:
        acc[d] = acc.get(d, 0) + v


def betti(I: Instance) -> BettiTable:
    """Per-(σ,ω) and total Betti numbers (homology and cohomology agree over a field)."""
    cache = {}
    pairs, totals = {}, {}
    for s, w in index_set(I):
        L = hochster_link(I.K, s, w)
        h = cache.get(L.faces)
        if h is None:
            h = cache[L.faces] = reduced_betti(L, I.field)
        T = t_dims(I, s, w)
        row = {}
        for a, u in h.items():
            for t, v in T.items():
                _add_into(row, a + t + 1, u * v)
        pairs[(s, w)] = row
        for d, v in row.items():
            _add_into(totals, d, v)
    return BettiTable(pairs, dict(sorted(totals.items())))


# ---------------------------------------------------------------------------
# the minimal model C_*(M) = Σ_{σ∈K} ⊗_k V_k inside ⊗_k U_k

def _u_basis(fd: FactorData):
    """Labels (j, shifted) of U_k; shifted=True is the copy q of a kernel class."""
    out = [((j, False), fd.degrees[j]) for j in range(len(fd))]
    out += [((j, True), fd.degrees[j] + 1) for j in fd.kernel]
    return out


def minimal_model(I: Instance):
    """(ChainComplex, homology totals) of the model; totals must equal betti(I)."""
    F = I.field
    K = I.K
    per = [_u_basis(fd) for fd in I.factors]
    loose = []      # bit mask of coordinates free to be in 𝔠 or 𝔮
    for k, fd in enumerate(I.factors):
        loose.append([fd.roles[j] == "c" or sh for (j, sh), _ in per[k]])
    basis = {}
    for combo in product(*[range(len(p)) for p in per]):
        pattern = 0
        for k, a in enumerate(combo):
            if loose[k][a]:
                pattern |= 1 << k
        if pattern not in K.faces:
            continue
        lab = tuple(per[k][a][0] for k, a in enumerate(combo))
        deg = sum(per[k][a][1] for k, a in enumerate(combo))
        basis.setdefault(deg, []).append(lab)
    for d in basis:
        basis[d].sort()
    degs = [fd.degrees for fd in I.factors]

    def faces(lab):
        out = []
        shift = 0
        for k, (j, sh) in enumerate(lab):
            if sh:
                sign = -1 if shift % 2 else 1
                out.append((sign, lab[:k] + ((j, False),) + lab[k + 1:]))
            shift += degs[k][j] + (1 if sh else 0)
        return out

    C = complex_from_generators(F, basis, faces)
    H = homology(C)
    return C, dict(sorted(H.dims.items()))


def kunneth_A(I: Instance):
    """Betti numbers of A_1×⋯×A_m straight from the factor data."""
    poly = {0: 1}
    for fd in I.factors:
        nxt = {}
        for a, u in poly.items():
            for j in fd.A_basis:
                d = a + fd.degrees[j]
                nxt[d] = nxt.get(d, 0) + u
        poly = nxt
    return dict(sorted(poly.items()))

"""Cover chain complexes and the homology coalgebra of Z_K(X,A).

A simplex cover (σ_1, …, σ_n) of K covers Z_K by the blocks D(σ_j).  For a
nonempty μ ⊆ [n] the intersection of the blocks over μ is D(η_μ) with
η_μ = ∩_{j∈μ} σ_j, whose homology is the Künneth tensor of H_*(X_k) for
k ∈ η_μ and H_*(A_k) otherwise.  Every Künneth basis tuple is also an element
x of the generating set T, so the cover complex splits into one summand per x:
the relative chains C(2^{μ_max}) / C(N_x), N_x being the nerve simplices on
which x restricts to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import coalg
from .chains import aw_split, complex_from_generators, homology, reduced_betti, relative_full_complex
from .exactlin import Matrix, rank
from .hochster import Instance, index_set, rho, t_basis, varrho
from .simplicial import SimplicialComplex, hochster_link, popcount, subsets

MAX_COVER = 12


@dataclass(frozen=True)
class SimplexCover:
    simplices: tuple
    K: SimplicialComplex

    def __post_init__(self):
        if self.K.is_void:
            raise ValueError("the void complex has no simplex cover")
        for s in self.simplices:
            if s not in self.K.faces:
                raise ValueError("cover entry is not a simplex of K")
        have = set(self.simplices)
        for f in self.K.facets():
            if f not in have:
                raise ValueError("a simplex cover must contain every maximal simplex")

    def __len__(self):
        return len(self.simplices)

    def eta_table(self):
        """η_μ for every μ ⊆ [n] (η_φ is the whole ground set)."""
        n = len(self.simplices)
        eta = [0] * (1 << n)
        eta[0] = (1 << self.K.m) - 1
        for mu in range(1, 1 << n):
            low = mu & -mu
            eta[mu] = eta[mu ^ low] & self.simplices[low.bit_length() - 1]
        return eta


def all_simplices_cover(K: SimplicialComplex) -> SimplexCover:
    return SimplexCover(tuple(K.simplices), K)


def facet_cover(K: SimplicialComplex) -> SimplexCover:
    return SimplexCover(tuple(K.facets()), K)


def default_cover(K: SimplicialComplex) -> SimplexCover:
    """All simplices when there are at most MAX_COVER of them, otherwise the facets."""
    if len(K.faces) <= MAX_COVER:
        return all_simplices_cover(K)
    return facet_cover(K)


# ---------------------------------------------------------------------------
# tensor coproducts

def kunneth_coproduct(I: Instance, x, xset: int):
    """Coproduct of the tuple x in ⊗_k H_*(Y_k), Y_k = X_k for k ∈ xset, else A_k.

    Koszul sign (-1)^ε with ε = Σ_{u<v} |x''_u||x'_v|.
    """
    F = I.field
    terms = [((), (), F.one, 0)]     # front, back, coefficient, running back degree
    for k, (fd, a) in enumerate(zip(I.factors, x)):
        table = fd.coproduct(a, bool(xset >> k & 1))
        deg = fd.degrees
        nxt = []
        for f, b, c, bd in terms:
            for (a1, a2), c1 in table.items():
                cc = c * c1
                if bd * deg[a1] % 2:
                    cc = -cc
                nxt.append((f + (a1,), b + (a2,), cc, bd + deg[a2]))
        terms = nxt
    out = {}
    for f, b, c, _ in terms:
        coalg._add(F, out, (f, b), c)
    return out


def delta_T(I: Instance, x):
    """Δ^T: 𝔠-coordinates use the coproduct of H_*(X_k), all others that of H_*(A_k)."""
    return kunneth_coproduct(I, x, rho(I, x))


# ---------------------------------------------------------------------------
# the cover complex

class CoverComplex:
    """𝔅(M) for a cover, graded by total degree |μ|-1 + t."""

    def __init__(self, I: Instance, C: SimplexCover):
        n = len(C)
        if n > MAX_COVER:
            raise ValueError(f"cover has {n} entries, at most {MAX_COVER} supported")
        self.instance = I
        self.cover = C
        self.eta = eta = C.eta_table()
        basis = {}
        self.bidegree = {}
        for mu in sorted(range(1, 1 << n), key=lambda u: (popcount(u), u)):
            e = eta[mu]
            lists = [fd.X_basis if e >> k & 1 else fd.A_basis for k, fd in enumerate(I.factors)]
            s = popcount(mu) - 1
            for a in product(*lists):
                t = I.degree(a)
                basis.setdefault(s + t, []).append((mu, a))
                self.bidegree[(mu, a)] = (s, t)
        self._kmask = {}
        self._delta = {}
        self.complex = complex_from_generators(I.field, basis, self._faces)

    def kernel_mask(self, a):
        got = self._kmask.get(a)
        if got is None:
            got = self._kmask[a] = varrho(self.instance, a)
        return got

    def survives(self, a, nu):
        """Is the restriction of a to M_ν nonzero (no kernel class on a coordinate of η_ν)?"""
        return not self.kernel_mask(a) & self.eta[nu]

    def _faces(self, lab):
        mu, a = lab
        out = []
        sign = 1
        rest = mu
        while rest:
            low = rest & -rest
            nu = mu ^ low
            if nu and self.survives(a, nu):
                out.append((sign, (nu, a)))
            sign = -sign
            rest ^= low
        return out

    def coproduct(self, lab):
        """Δ(μ⊗a) as {(label', label''): coef}."""
        got = self._delta.get(lab)
        if got is not None:
            return got
        I = self.instance
        F = I.field
        mu, a = lab
        s = popcount(mu) - 1
        out = {}
        parts = kunneth_coproduct(I, a, self.eta[mu])
        for front, back in aw_split(mu):
            k = popcount(front) - 1
            for (a1, a2), c in parts.items():
                if not (self.survives(a1, front) and self.survives(a2, back)):
                    continue
                if (s - k) * I.degree(a1) % 2:
                    c = -c
                coalg._add(F, out, ((front, a1), (back, a2)), c)
        self._delta[lab] = out
        return out

    def _total(self, lab):
        s, t = self.bidegree[lab]
        return s + t

    def _d(self, lab):
        return [(self.instance.field(sg), f) for sg, f in self._faces(lab)]

    def coproduct_defects(self, limit=None):
        """Basis labels where (d⊗d)Δ != Δd (total-degree Koszul sign on d⊗d)."""
        F = self.instance.field
        bad = []
        for deg, labs in sorted(self.complex.basis.items()):
            for lab in labs:
                lhs = {}
                for (l1, l2), c in self.coproduct(lab).items():
                    for c1, f in self._d(l1):
                        coalg._add(F, lhs, (f, l2), c * c1)
                    sg = -1 if self._total(l1) % 2 else 1
                    for c2, f in self._d(l2):
                        coalg._add(F, lhs, (l1, f), c * c2 * sg)
                rhs = {}
                for c1, f in self._d(lab):
                    for key, c2 in self.coproduct(f).items():
                        coalg._add(F, rhs, key, c1 * c2)
                if lhs != rhs:
                    bad.append(lab)
                    if limit is not None and len(bad) >= limit:
                        return bad
        return bad

    def homology_totals(self):
        return dict(sorted(homology(self.complex).dims.items()))


def cover_complex(I: Instance, C: SimplexCover | None = None) -> CoverComplex:
    return CoverComplex(I, C if C is not None else default_cover(I.K))


# ---------------------------------------------------------------------------
# components

@dataclass(eq=False)
class Component:
    x: tuple
    sigma: int
    omega: int
    degree: int
    mu_max: int
    killed: frozenset
    relhom: object = field(repr=False)

    def nerve(self, n):
        """N_x as a simplicial complex on the cover indices."""
        return SimplicialComplex(n, self.killed, check=False)


@dataclass
class ComponentSet:
    instance: Instance
    cover: SimplexCover
    eta: list
    components: list
    dropped: list          # (x, σ, ω) with empty valid family
    by_x: dict

    def totals(self):
        out = {}
        for comp in self.components:
            for s, dim in comp.relhom.dims.items():
                d = s + comp.degree
                out[d] = out.get(d, 0) + dim
        return dict(sorted(out.items()))


def components(I: Instance, C: SimplexCover | None = None) -> ComponentSet:
    if C is None:
        C = default_cover(I.K)
    n = len(C)
    if n > MAX_COVER:
        raise ValueError(f"cover has {n} entries, at most {MAX_COVER} supported")
    eta = C.eta_table()
    F = I.field
    relcache = {}
    comps, dropped, by_x = [], [], {}
    for s, w in index_set(I):
        mu_max = sum(1 << j for j, sj in enumerate(C.simplices) if not s & ~sj)
        xs = t_basis(I, s, w)
        if not mu_max or eta[mu_max] & w:
            for x in xs:
                dropped.append((x, s, w))
            if xs and reduced_betti(hochster_link(I.K, s, w), F):
                raise AssertionError("a starved component carries homology")
            continue
        killed = frozenset([0] + [lam for lam in subsets(mu_max) if lam and eta[lam] & w])
        key = (mu_max, killed)
        rel = relcache.get(key)
        if rel is None:
            rel = relcache[key] = homology(relative_full_complex(mu_max, killed, F))
        for x in xs:
            comp = Component(x, s, w, I.degree(x), mu_max, killed, rel)
            by_x[x] = comp
            comps.append(comp)
    return ComponentSet(I, C, eta, comps, dropped, by_x)


def nerve_agreement(cs: ComponentSet):
    """(x, H̃(N_x), H̃(K_{σ,ω})) for every component where the two differ."""
    I = cs.instance
    n = len(cs.cover)
    bad = []
    cache = {}
    for comp in cs.components:
        key = (comp.sigma, comp.omega)
        if key not in cache:
            a = reduced_betti(comp.nerve(n), I.field)
            b = reduced_betti(hochster_link(I.K, comp.sigma, comp.omega), I.field)
            cache[key] = (a, b)
        a, b = cache[key]
        if a != b:
            bad.append((comp.x, a, b))
    return bad


# ---------------------------------------------------------------------------
# structure constants

@dataclass
class StructureTable:
    instance: Instance
    basis: list            # (x, σ, ω, s, class index)
    degrees: list
    unit: int
    coproduct: dict        # h -> {(h', h''): coef}
    cover: SimplexCover
    dropped: list

    def by_degree(self):
        out = {}
        for h, d in enumerate(self.degrees):
            out.setdefault(d, []).append(h)
        return out

    def products(self):
        """(h', h'') -> {h: coef} on the dual basis, sign (-1)^{|h'||h''|}."""
        out = {}
        for h, terms in self.coproduct.items():
            for (a, b), c in terms.items():
                if self.degrees[a] * self.degrees[b] % 2:
                    c = -c
                out.setdefault((a, b), {})[h] = c
        return out

    def mult_ranks(self):
        return mult_rank_table(self.instance.field, self.by_degree(), self.coproduct)

    def commutator_ranks(self):
        return commutator_rank_table(self.instance.field, self.by_degree(), self.coproduct)

    def betti(self):
        return {d: len(hs) for d, hs in sorted(self.by_degree().items())}


def mult_rank_table(F, by_degree, coproduct):
    """(p, q) -> rank of H^p ⊗ H^q -> H^{p+q}, read off a homology coproduct table."""
    out = {}
    for p in sorted(by_degree):
        for q in sorted(by_degree):
            targets = by_degree.get(p + q, [])
            if not targets:
                out[(p, q)] = 0
                continue
            cols = {}
            for a in by_degree[p]:
                for b in by_degree[q]:
                    cols[(a, b)] = len(cols)
            rows = {h: r for r, h in enumerate(targets)}
            colvecs = [{} for _ in cols]
            for h in targets:
                for (a, b), c in coproduct[h].items():
                    j = cols.get((a, b))
                    if j is not None:
                        colvecs[j][rows[h]] = c
            out[(p, q)] = rank(Matrix(F, len(rows), len(cols), colvecs))
    return out


def commutator_rank_table(F, by_degree, coproduct):
    """(p, q) -> rank of x ⊗ y -> xy - (-1)^{pq} yx on H^p ⊗ H^q.

    Zero for the cohomology of any space.  Unlike the plain product ranks it
    notices sign errors: flipping the sign of a single structure constant
    leaves every product a (signed) basis vector, but breaks this identity.
    """
    out = {}
    for p in sorted(by_degree):
        for q in sorted(by_degree):
            targets = by_degree.get(p + q, [])
            sign = -1 if p * q % 2 else 1
            cols = []
            for a in by_degree[p]:
                for b in by_degree[q]:
                    col = {}
                    for r, h in enumerate(targets):
                        v = coproduct[h].get((a, b), F.zero) - sign * coproduct[h].get((b, a), F.zero)
                        v = F.norm(v)
                        if v:
                            col[r] = v
                    cols.append(col)
            out[(p, q)] = rank(Matrix(F, len(targets), len(cols), cols)) if targets else 0
    return out


def split_sign(s, k, front_degree):
    """Sign of the (k, s-k) front/back split of an s-simplex against a front tuple."""
    return -1 if (s - k) * front_degree % 2 else 1


def homology_coproduct(I: Instance, C: SimplexCover | None = None) -> StructureTable:
    """Structure constants of Δ on H_*(Z_K(X,A)), through the component chains.

    A relative cycle z = Σ c_λ λ of component x maps to
    Σ (-1)^{(s-k)|x'|} c_λ (λ'_k ⊗ x') ⊗ (λ''_k ⊗ x''), summed over the
    front/back splits of λ and the terms of Δ^T(x); a side whose nerve
    simplex is killed for its tuple is dropped.  Coordinates are read off
    with the cocycles dual to the chosen relative homology classes.
    """
    cs = components(I, C)
    F = I.field
    eta = cs.eta
    basis, degrees, where = [], [], {}
    for comp in cs.components:
        for s in sorted(comp.relhom.reps):
            for a in range(comp.relhom.dim(s)):
                where[(id(comp), s, a)] = len(basis)
                basis.append((comp.x, comp.sigma, comp.omega, s, a))
                degrees.append(s + comp.degree)
    index_cache = {}

    def chain_index(rel, s):
        key = (id(rel), s)
        got = index_cache.get(key)
        if got is None:
            got = index_cache[key] = rel.complex.index(s)
        return got

    table = {}
    for comp in cs.components:
        rel = comp.relhom
        dT = list(delta_T(I, comp.x).items())
        sides = []
        for (x1, x2), c in dT:
            sides.append((x1, x2, c, I.degree(x1), varrho(I, x1), varrho(I, x2)))
        for s in sorted(rel.reps):
            basis_s = rel.complex.basis[s]
            for a, z in enumerate(rel.reps[s]):
                out = {}
                for li, cz in z.items():
                    lam = basis_s[li]
                    for front, back in aw_split(lam):
                        k = popcount(front) - 1
                        ef, eb = eta[front], eta[back]
                        for x1, x2, c, d1, w1, w2 in sides:
                            if w1 & ef or w2 & eb:
                                continue
                            c1, c2 = cs.by_x.get(x1), cs.by_x.get(x2)
                            if c1 is None or c2 is None:
                                raise AssertionError("surviving term in a dropped component")
                            coef = cz * c
                            if split_sign(s, k, d1) < 0:
                                coef = -coef
                            r1, r2 = c1.relhom, c2.relhom
                            f1 = r1.functional_at(k, chain_index(r1, k)[front])
                            if not f1:
                                continue
                            f2 = r2.functional_at(s - k, chain_index(r2, s - k)[back])
                            for b1, v1 in f1.items():
                                h1 = where[(id(c1), k, b1)]
                                for b2, v2 in f2.items():
                                    h2 = where[(id(c2), s - k, b2)]
                                    coalg._add(F, out, (h1, h2), coef * v1 * v2)
                table[where[(id(comp), s, a)]] = out
    unit_x = I.unit()
    ucomp = cs.by_x[unit_x]
    unit = where[(id(ucomp), 0, 0)]
    return StructureTable(I, basis, degrees, unit, table, cs.cover, cs.dropped)


# ---------------------------------------------------------------------------
# (co)commutativity under the splitting hypothesis

def delta_T_table(I: Instance):
    """Δ^T on every generator of T, keyed by tuple."""
    out = {}
    for s, w in index_set(I):
        for x in t_basis(I, s, w):
            out[x] = delta_T(I, x)
    return out


def check_cocommutativity(I: Instance, table: StructureTable | None = None) -> dict:
    """Report: does each i_k restrict to a coalgebra isomorphism on 𝔦_k, and if so
    are Δ^T and the coproduct of H_*(M) graded cocommutative and coassociative."""
    hyp = all(fd.image_is_subcoalgebra() for fd in I.factors)
    report = {"hypothesis": hyp}
    if not hyp:
        report["status"] = "hypothesis fails"
        return report
    F = I.field
    dT = delta_T_table(I)
    report["delta_T_cocommutative"] = coalg.is_cocommutative(F, dT, I.degree)
    report["delta_T_coassociative"] = coalg.is_coassociative(F, dT)
    if table is None:
        table = homology_coproduct(I)
    deg = table.degrees.__getitem__
    report["coproduct_cocommutative"] = coalg.is_cocommutative(F, table.coproduct, deg)
    report["coproduct_coassociative"] = coalg.is_coassociative(F, table.coproduct)
    report["counital"] = not coalg.counit_defect(F, table.coproduct, table.unit)
    ok = all(v for k, v in report.items() if k != "hypothesis")
    report["status"] = "pass" if ok else "fail"
    return report


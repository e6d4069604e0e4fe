"""Homology-level data of one factor pair (X_k, A_k).

Each factor has a single ordered basis whose elements carry a role:
``"i"`` (image, a class of H_*(A) identified with its image in H_*(X)),
``"k"`` (kernel of H_*(A) -> H_*(X)) or ``"c"`` (a complement of the image
in H_*(X)).  H_*(A) has basis roles {i, k}, H_*(X) roles {i, c}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import coalg
from .chains import augmented_complex, aw_split, homology, induced_map
from .exactlin import Field, Matrix, SpanSolver, make_field, nullspace, vec_axpy
from .simplicial import SimplicialComplex, from_facets, popcount

ROLES = ("i", "k", "c")
_ROLE_RANK = {r: j for j, r in enumerate(ROLES)}


@dataclass(frozen=True)
class SimplicialPair:
    X: SimplicialComplex
    A: SimplicialComplex

    def __post_init__(self):
        if self.X.m != self.A.m:
            raise ValueError("X and A must share a ground set")
        if not self.A.faces <= self.X.faces:
            raise ValueError("A is not a subcomplex of X")
        if not self.A.vertex_mask:
            raise ValueError("A must have at least one vertex")

    def to_json(self):
        return {"kind": "simplicial_pair", "m": self.X.m,
                "x_facets": self.X.to_json()["facets"], "a_facets": self.A.to_json()["facets"]}


@dataclass(frozen=True, eq=False)
class FactorData:
    field: Field
    roles: tuple
    degrees: tuple
    names: tuple
    unit: int
    coproduct_A: dict     # index -> {(i1, i2): coef}
    coproduct_X: dict
    provenance: dict = field(default_factory=dict)
    pair: SimplicialPair | None = None

    def __post_init__(self):
        _validate(self)

    def __len__(self):
        return len(self.roles)

    def of_role(self, role):
        return [j for j, r in enumerate(self.roles) if r == role]

    @property
    def kernel(self):
        return self.of_role("k")

    @property
    def image(self):
        return self.of_role("i")

    @property
    def coker(self):
        return self.of_role("c")

    @property
    def A_basis(self):
        return [j for j, r in enumerate(self.roles) if r != "c"]

    @property
    def X_basis(self):
        return [j for j, r in enumerate(self.roles) if r != "k"]

    def include(self, j):
        """i_k on a basis element of H_*(A): itself for image classes, None (zero) for kernel ones."""
        return j if self.roles[j] == "i" else None

    def coproduct(self, j, in_X):
        return (self.coproduct_X if in_X else self.coproduct_A)[j]

    def same_content(self, other):
        return (self.field == other.field and self.roles == other.roles
                and self.degrees == other.degrees and self.names == other.names
                and self.unit == other.unit and self.coproduct_A == other.coproduct_A
                and self.coproduct_X == other.coproduct_X)

    def to_raw(self):
        def coef(c):
            if self.field.p is None:
                q = Fraction(int(c.numerator), int(c.denominator))
                return q.numerator if q.denominator == 1 else str(q)
            return int(c)

        def table(t):
            return {self.names[x]: [[coef(c), self.names[a], self.names[b]]
                                    for (a, b), c in sorted(terms.items())]
                    for x, terms in sorted(t.items())}
        return {"kind": "raw",
                "elements": [{"name": n, "role": r, "degree": d}
                             for n, r, d in zip(self.names, self.roles, self.degrees)],
                "unit": self.names[self.unit],
                "coproduct_A": table(self.coproduct_A),
                "coproduct_X": table(self.coproduct_X)}

    def image_is_subcoalgebra(self):
        """The coproduct of H_*(A) maps every image class into image⊗image and
        agrees there with the coproduct of H_*(X) (i restricted to the image
        basis is then a coalgebra isomorphism)."""
        for y in self.image:
            terms = self.coproduct_A[y]
            if any(self.roles[a] != "i" or self.roles[b] != "i" for (a, b) in terms):
                return False
            if terms != self.coproduct_X[y]:
                return False
        return True


def _validate(fd: FactorData):
    n = len(fd.roles)
    if not (len(fd.degrees) == len(fd.names) == n):
        raise ValueError("roles, degrees and names must have equal length")
    if len(set(fd.names)) != n:
        raise ValueError("element names must be distinct")
    for r, d in zip(fd.roles, fd.degrees):
        if r not in ROLES:
            raise ValueError(f"unknown role {r!r}")
        if not isinstance(d, int) or d < 0:
            raise ValueError(f"degree {d!r} must be a nonnegative integer")
    if not 0 <= fd.unit < n or fd.roles[fd.unit] != "i" or fd.degrees[fd.unit] != 0:
        raise ValueError("missing unit: need one image element of degree 0")
    for j, (r, d) in enumerate(zip(fd.roles, fd.degrees)):
        if j != fd.unit and d == 0 and r != "k":
            raise ValueError("X must be connected: the unit is the only degree-0 class of H_*(X)")
    deg = fd.degrees.__getitem__
    for label, table, basis in (("A", fd.coproduct_A, fd.A_basis), ("X", fd.coproduct_X, fd.X_basis)):
        if sorted(table) != basis:
            raise ValueError(f"coproduct_{label} must be given for exactly the basis of H_*({label})")
        allowed = set(basis)
        for x, terms in table.items():
            for (a, b), c in terms.items():
                if a not in allowed or b not in allowed:
                    raise ValueError(f"coproduct_{label}({fd.names[x]}) leaves H_*({label})")
                if not c:
                    raise ValueError("explicit zero coefficient in coproduct")
        bad = coalg.degree_defect(table, deg)
        if bad:
            raise ValueError(f"coproduct_{label} of {fd.names[bad[0]]} violates degree additivity")
        u = fd.unit
        if table[u] != {(u, u): fd.field.one}:
            raise ValueError(f"coproduct_{label} of the unit must be u⊗u")
        bad = coalg.counit_defect(fd.field, table, u)
        if bad:
            raise ValueError(f"coproduct_{label} is not counital at {fd.names[bad[0]]}")
    for y in fd.image:
        dropped = {(a, b): c for (a, b), c in fd.coproduct_A[y].items()
                   if fd.roles[a] == "i" and fd.roles[b] == "i"}
        if dropped != fd.coproduct_X[y]:
            raise ValueError(f"inclusion is not compatible with the coproducts at {fd.names[y]}")
    for y in fd.kernel:
        if any(fd.roles[a] == "i" and fd.roles[b] == "i" for (a, b) in fd.coproduct_A[y]):
            raise ValueError(f"inclusion is not compatible with the coproducts at {fd.names[y]}")


def _name_elements(roles, degrees):
    count = {}
    for r, d in zip(roles, degrees):
        count[(r, d)] = count.get((r, d), 0) + 1
    seen = {}
    names = []
    for r, d in zip(roles, degrees):
        j = seen.get((r, d), 0)
        seen[(r, d)] = j + 1
        names.append(f"{r}{d}" if count[(r, d)] == 1 else f"{r}{d}_{j}")
    return names


def _order(elems):
    """elems: list of (role, degree, payload) -> sorted by degree, role, position."""
    keyed = [(d, _ROLE_RANK[r], j, r, p) for j, (r, d, p) in enumerate(elems)]
    keyed.sort(key=lambda t: t[:3])
    return [(r, d, p) for (d, _, _, r, p) in keyed]


def analyze_pair(P: SimplicialPair, F) -> FactorData:
    """Factor data of a simplicial pair A ⊆ X, coproducts from the AW diagonal."""
    F = make_field(F)
    CA = augmented_complex(P.A, F, augmented=False)
    CX = augmented_complex(P.X, F, augmented=False)
    HA, HX = homology(CA), homology(CX)
    if HX.dim(0) != 1:
        raise ValueError("X must be connected")
    xidx = {n: CX.index(n) for n in CX.basis}
    incl = {n: Matrix(F, CX.dim(n), CA.dim(n), [{xidx[n][s]: F.one} for s in CA.basis[n]])
            for n in CA.basis}
    imap = induced_map(incl, HA, HX)

    # per degree: new bases as coordinate vectors in the computed homology bases
    newA, newX = {}, {}      # degree -> list of (role, coordinate vector)
    for n in sorted(set(HA.reps) | set(HX.reps)):
        hA, hX = HA.dim(n), HX.dim(n)
        M = imap.get(n, Matrix(F, hX, hA))
        ker = list(nullspace(M).columns) if hA else []
        s = SpanSolver(F, ker)
        compl = [j for j in range(hA) if s.add({j: F.one})]
        images = [M.columns[j] for j in compl]
        t = SpanSolver(F, images)
        cok = [j for j in range(hX) if t.add({j: F.one})]
        newA[n] = [("i", {j: F.one}) for j in compl] + [("k", v) for v in ker]
        newX[n] = [("i", v) for v in images] + [("c", {j: F.one}) for j in cok]

    # global ordering; image classes are shared between the two bases
    elems = []
    for n in newA:
        for a, (r, v) in enumerate(newA[n]):
            elems.append((r, n, ("A", a)))
        for a, (r, v) in enumerate(newX[n]):
            if r == "c":
                elems.append((r, n, ("X", a)))
    elems = _order(elems)
    roles = tuple(r for r, _, _ in elems)
    degrees = tuple(d for _, d, _ in elems)
    gA, gX = {}, {}
    for g, (r, n, (space, a)) in enumerate(elems):
        if space == "A":
            gA[(n, a)] = g
            if r == "i":
                gX[(n, a)] = g      # image classes come first in both new bases, same order
        else:
            gX[(n, a)] = g

    tabA = _aw_coproducts(F, CA, HA, newA, gA)
    tabX = _aw_coproducts(F, CX, HX, newX, gX)

    unit = gA[(0, 0)]
    prov = {"kind": "simplicial_pair", **P.to_json()}
    return FactorData(F, roles, degrees, tuple(_name_elements(roles, degrees)), unit,
                      tabA, tabX, prov, P)


def _aw_coproducts(F, C, H, new, gmap):
    """AW coproduct of every new basis class, read off with dual cocycles."""
    dual = {n: _dual_functionals(F, H, n, vecs) for n, vecs in new.items()}
    cidx = {n: C.index(n) for n in C.basis}
    table = {}
    for n, vecs in new.items():
        for a, (_, v) in enumerate(vecs):
            z = {}
            for b, c in v.items():
                vec_axpy(F, z, c, H.reps[n][b])
            terms = {}
            for si, c in z.items():
                for front, back in aw_split(C.basis[n][si]):
                    nf, nb = popcount(front) - 1, popcount(back) - 1
                    xf = dual[nf][cidx[nf][front]]
                    xb = dual[nb][cidx[nb][back]]
                    for a1, v1 in xf.items():
                        for a2, v2 in xb.items():
                            coalg._add(F, terms, (gmap[(nf, a1)], gmap[(nb, a2)]), c * v1 * v2)
            table[gmap[(n, a)]] = terms
    return table


def _dual_functionals(F, H, n, vecs):
    """Cocycles dual to the new basis ``vecs`` (coordinate vectors in H's basis)."""
    if not vecs:
        return [{} for _ in range(H.complex.dim(n))]
    P = Matrix(F, H.dim(n), len(vecs), [v for _, v in vecs])
    inv = _inverse_columns(P)
    out = []
    for f in H.functional(n):
        g = {}
        for b, val in f.items():
            vec_axpy(F, g, val, inv[b])
        out.append(g)
    return out


def _inverse_columns(P: Matrix):
    """Columns of P^{-1} for a square invertible P."""
    F = P.field
    s = SpanSolver(F, P.columns)
    if s.rank != P.cols or P.rows != P.cols:
        raise AssertionError("change of basis is not invertible")
    return [s.solve({b: F.one}) for b in range(P.rows)]


def sphere_pair(r: int, k: int, F) -> FactorData:
    """(S^{r+1}, S^k) via the standard inclusion; one class of each role."""
    F = make_field(F)
    if not 0 <= k <= r:
        raise ValueError(f"need 0 <= k <= r, got r={r}, k={k}")
    one = F.one
    elems = _order([("i", 0, "u"), ("k", k, "a"), ("c", r + 1, "c")])
    roles = tuple(e[0] for e in elems)
    degrees = tuple(e[1] for e in elems)
    pos = {e[2]: j for j, e in enumerate(elems)}
    u, a, c = pos["u"], pos["a"], pos["c"]
    if k == 0:
        da = {(a, a): one, (a, u): one, (u, a): one}
    else:
        da = {(a, u): one, (u, a): one}
    tabA = {u: {(u, u): one}, a: da}
    tabX = {u: {(u, u): one}, c: {(c, u): one, (u, c): one}}
    names = tuple({u: "u", a: f"k{k}", c: f"c{r + 1}"}[j] for j in range(3))
    return FactorData(F, roles, degrees, names, u, tabA, tabX,
                      {"kind": "sphere_pair", "r": r, "k": k})


def disk_sphere(n: int, F) -> FactorData:
    """(Δ^n, ∂Δ^n) as a simplicial pair, n >= 1."""
    if n < 1:
        raise ValueError("disk_sphere needs n >= 1")
    full = list(range(1, n + 2))
    X = from_facets(n + 1, [full])
    A = from_facets(n + 1, [[v for v in full if v != w] for w in full])
    fd = analyze_pair(SimplicialPair(X, A), F)
    object.__setattr__(fd, "provenance", {"kind": "disk_sphere", "n": n, **fd.provenance})
    return fd


def _parse_coef(F, c):
    if isinstance(c, bool):
        raise ValueError("boolean coefficient")
    if isinstance(c, int):
        return F(c)
    if isinstance(c, str):
        return F(Fraction(c))
    raise ValueError(f"bad coefficient {c!r}")


def from_raw(data: dict, F) -> FactorData:
    """Validated FactorData from explicit content (the ``to_raw`` layout)."""
    F = make_field(F)
    try:
        els = data["elements"]
        names = [e["name"] for e in els]
        roles = [e["role"] for e in els]
        degs = [e["degree"] for e in els]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed element list: {exc}") from None
    elems = _order([(r, d, nm) for r, d, nm in zip(roles, degs, names)])
    names = tuple(e[2] for e in elems)
    pos = {nm: j for j, nm in enumerate(names)}
    if len(pos) != len(names):
        raise ValueError("element names must be distinct")
    if data.get("unit") not in pos:
        raise ValueError("missing unit")

    def table(key):
        out = {}
        raw = data.get(key)
        if not isinstance(raw, dict):
            raise ValueError(f"{key} must be an object")
        for x, terms in raw.items():
            if x not in pos:
                raise ValueError(f"{key}: unknown element {x!r}")
            t = {}
            for term in terms:
                c, a, b = term
                if a not in pos or b not in pos:
                    raise ValueError(f"{key}: unknown element in term {term!r}")
                coalg._add(F, t, (pos[a], pos[b]), _parse_coef(F, c))
            out[pos[x]] = t
        return out

    prov = {"kind": "raw"}
    return FactorData(F, tuple(e[0] for e in elems), tuple(e[1] for e in elems), names,
                      pos[data["unit"]], table("coproduct_A"), table("coproduct_X"), prov)


def check_coalgebras(fd: FactorData) -> dict:
    """Counit, coassociativity and graded cocommutativity of both coproducts."""
    F, deg = fd.field, fd.degrees.__getitem__
    out = {}
    for label, t in (("A", fd.coproduct_A), ("X", fd.coproduct_X)):
        out[label] = {
            "counital": not coalg.counit_defect(F, t, fd.unit),
            "coassociative": coalg.is_coassociative(F, t),
            "cocommutative": coalg.is_cocommutative(F, t, deg),
        }
    return out

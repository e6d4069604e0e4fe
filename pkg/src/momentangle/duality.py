"""Alexander duality checks, combinatorial and for complementary sphere pairs."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .chains import reduced_betti
from .exactlin import Field, make_field
from .factors import sphere_pair
from .hochster import Instance, betti
from .simplicial import SimplicialComplex, alexander_dual, all_complexes, random_complex


@dataclass(frozen=True)
class SpherePairInstance:
    K: SimplicialComplex
    params: tuple          # ((r_1, k_1), ..., (r_m, k_m))
    field: Field

    def __post_init__(self):
        params = tuple((int(r), int(k)) for r, k in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != self.K.m:
            raise ValueError("one (r, k) per vertex of the ground set")
        for r, k in params:
            if not 0 <= k <= r:
                raise ValueError(f"need 0 <= k <= r, got r={r}, k={k}")

    @property
    def m(self):
        return self.K.m

    @property
    def dimension(self):
        """Σ (r_i + 1), the dimension of the ambient product of spheres."""
        return sum(r + 1 for r, _ in self.params)

    def instance(self) -> Instance:
        return Instance(self.field, self.K, [sphere_pair(r, k, self.field) for r, k in self.params])


def complementary_instance(S: SpherePairInstance) -> SpherePairInstance:
    return SpherePairInstance(alexander_dual(S.K, S.m),
                              tuple((r, r - k) for r, k in S.params), S.field)


def duality_check(S: SpherePairInstance) -> dict:
    """Compare dim H^{σ,ω}_d(M) with dim H^{R-d-1}_{σ̃,ω}(M^c) for every ω ≠ φ.

    σ̃ = [m] \\ (σ ∪ ω) and R = Σ (r_i + 1).  Pairs missing from an index set
    count as zero, and both index sets are scanned.
    """
    Sc = complementary_instance(S)
    b = betti(S.instance())
    bc = betti(Sc.instance())
    full = (1 << S.m) - 1
    R = S.dimension
    keys = {(s, w) for (s, w) in b.pairs if w}
    keys |= {(full & ~(s | w), w) for (s, w) in bc.pairs if w}
    rows = []
    for s, w in sorted(keys):
        mine = b.pair_dims(s, w)
        st = full & ~(s | w)
        theirs = bc.pair_dims(st, w)
        mirrored = {R - d - 1: v for d, v in theirs.items()}
        rows.append({"sigma": s, "omega": w, "sigma_tilde": st,
                     "dims": mine, "dual_dims": theirs, "ok": mine == mirrored})
    offsets = sorted({d + e for r in rows for d in r["dims"] for e in r["dual_dims"]})
    return {"pairs": rows, "passed": all(r["ok"] for r in rows), "R": R,
            "observed_offsets": offsets, "expected_offset": R - 1}


def ad_check(L: SimplicialComplex, t: int | None = None, F="rationals") -> dict:
    """Reduced Betti numbers of L and its Alexander dual on [t] and the shift relating them.

    Reports every shift c with dim H̃_s(L) = dim H̃_{c-s}(L*) for all s, and
    whether t-3 is among them.
    """
    F = make_field(F)
    if t is None:
        t = L.m
    D = alexander_dual(L, t)
    a = reduced_betti(SimplicialComplex(t, L.faces, check=False), F)
    b = reduced_betti(D, F)
    lo = min(list(a) + list(b) + [-1])
    hi = max(list(a) + list(b) + [t])
    shifts = []
    for c in range(2 * lo - 1, 2 * hi + 2):
        if all(a.get(s, 0) == b.get(c - s, 0) for s in range(lo - 1, hi + 2)) \
                and all(b.get(s, 0) == a.get(c - s, 0) for s in range(lo - 1, hi + 2)):
            shifts.append(c)
    return {"betti": a, "dual_betti": b, "t": t, "shifts": shifts,
            "ok": (t - 3) in shifts}


def ad_sweep(exhaustive: int = 4, samples: int = 100, max_t: int = 7, seed: int = 0,
             F="rationals") -> dict:
    """Exhaustive check for 1 ≤ t ≤ ``exhaustive`` and random complexes up to ``max_t``.

    t = 0 is left out: on the empty ground set {φ} and {} are each other's
    duals but H̃_{-1}({φ}) = k has no partner in degree -2.
    """
    failures, count = [], 0
    for t in range(1, exhaustive + 1):
        for L in all_complexes(t):
            count += 1
            r = ad_check(L, t, F)
            if not r["ok"]:
                failures.append((t, L))
    rng = random.Random(seed)
    for _ in range(samples):
        t = rng.randint(1, max_t)
        L = random_complex(rng, t, p=rng.choice((0.3, 0.5, 0.7)))
        if rng.random() < 0.05:
            L = SimplicialComplex(t, (), check=False)
        count += 1
        if not ad_check(L, t, F)["ok"]:
            failures.append((t, L))
    return {"checked": count, "failures": failures, "ok": not failures}


def random_sphere_instance(rng: random.Random, max_m=5, max_r=3, F="rationals") -> SpherePairInstance:
    m = rng.randint(1, max_m)
    K = random_complex(rng, m, p=rng.choice((0.3, 0.5, 0.7)))
    params = []
    for _ in range(m):
        r = rng.randint(0, max_r)
        params.append((r, rng.randint(0, r)))
    return SpherePairInstance(K, tuple(params), make_field(F))

"""The ten acceptance criteria, all exact.

Each test records a one-line verdict; conftest.py prints them after the run.
"""
import os
import random
import subprocess
import sys
import time

import pytest

from momentangle.corpus import corpus, favour_kernels, random_instance, random_pair
from momentangle.duality import (SpherePairInstance, ad_sweep, duality_check,
                                  random_sphere_instance)
from momentangle.exactlin import make_field
from momentangle.factors import analyze_pair, check_coalgebras, disk_sphere
from momentangle.hochster import Instance, betti
from momentangle.oracle import compare
from momentangle.simplicial import from_facets, random_complex
from momentangle.structure import (SimplexCover, check_cocommutativity, components, cover_complex,
                                   nerve_agreement)

VERDICTS = {}
DATA = os.path.join(os.path.dirname(__file__), "data")


def record(n, ok, detail=""):
    VERDICTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    print(VERDICTS[n])
    assert ok, VERDICTS[n]


@pytest.fixture(scope="module")
def mixed_corpus():
    return corpus(2024, 50)


@pytest.fixture(scope="module")
def simplicial_corpus():
    return corpus(7, 30, simplicial_only=True, weigh=favour_kernels, structured=0.5)


def test_1_golden_instances():
    t = time.time()
    Q = make_field("rationals")
    ds = disk_sphere(2, Q)
    cases = [
        (from_facets(2, [[1], [2]]), [1, 0, 0, 1]),
        (from_facets(4, [[1, 2], [2, 3], [3, 4], [1, 4]]), [1, 0, 0, 2, 0, 0, 1]),
        (from_facets(2, []), [1, 2, 1]),
    ]
    ok = True
    for K, want in cases:
        I = Instance(Q, K, [ds] * K.m)
        rep = compare(I, rings=False)
        got = {k: [rep[k].get(d, 0) for d in range(len(want))] for k in
               ("hochster", "minimal_model", "components", "cover", "oracle")}
        ok &= all(v == want for v in got.values())
        ok &= all(max(rep[k]) < len(want) for k in got)
    elapsed = time.time() - t
    record(1, ok and elapsed < 5, f"three golden instances, {elapsed:.1f}s")


def test_2_pipeline_equivalence(mixed_corpus):
    t = time.time()
    bad = []
    for i, (I, labels) in enumerate(mixed_corpus):
        rep = compare(I, rings=False)
        if not rep["betti_agree"]:
            bad.append((i, labels))
    elapsed = time.time() - t
    fields = {str(I.field) for I, _ in mixed_corpus}
    record(2, not bad and elapsed < 120 and len(mixed_corpus) >= 50,
           f"{len(mixed_corpus)} instances over {sorted(fields)}, {len(bad)} mismatches, {elapsed:.1f}s")


def test_3_ring_equivalence(simplicial_corpus):
    t = time.time()
    bad = []
    products = 0
    for i, (I, labels) in enumerate(simplicial_corpus):
        rep = compare(I, rings=True, check_cover=False)
        if not rep["ok"]:
            bad.append((i, labels))
        products += any(v for (p, q), v in rep["mult_ranks"].items() if p and q)
    elapsed = time.time() - t
    record(3, not bad and elapsed < 300 and len(simplicial_corpus) >= 25,
           f"{len(simplicial_corpus)} simplicial instances ({products} with positive-degree "
           f"products), {len(bad)} mismatches, {elapsed:.1f}s")


def _random_cover(rng, K):
    extra = [s for s in K.simplices if rng.random() < 0.3]
    entries = list(K.facets()) + extra
    rng.shuffle(entries)
    return SimplexCover(tuple(entries[:10]) if len(entries) > 10 else tuple(entries), K)


def test_4_chain_identities():
    rng = random.Random(11)
    checked, bad = 0, []
    while checked < 20:
        I, labels = random_instance(rng, max_m=4, max_cover=8)
        facets = I.K.facets()
        if len(facets) > 7:
            continue
        cover = _random_cover(rng, I.K)
        if len(cover) > 8:
            cover = SimplexCover(tuple(facets), I.K)
        cc = cover_complex(I, cover)        # d∘d = 0 is asserted on construction
        if cc.coproduct_defects(limit=1):
            bad.append(labels)
        if cc.homology_totals() != betti(I).totals:
            bad.append(("totals", labels))
        checked += 1
    record(4, not bad, f"{checked} instances with random covers, {len(bad)} failures")


def test_5_alexander_duality():
    t = time.time()
    rep = ad_sweep(exhaustive=4, samples=100, max_t=7, seed=5)
    elapsed = time.time() - t
    record(5, rep["ok"] and elapsed < 60,
           f"{rep['checked']} complexes, {len(rep['failures'])} failures, {elapsed:.1f}s")


def test_6_sphere_pair_duality():
    rng = random.Random(6)
    n, bad = 0, 0
    for _ in range(25):
        S = random_sphere_instance(rng, max_m=5, max_r=3)
        n += 1
        bad += not duality_check(S)["passed"]
    record(6, bad == 0 and n >= 20, f"{n} sphere-pair instances, {bad} failures")


def test_7_nerve_agreement(mixed_corpus):
    bad, comps = 0, 0
    for I, _ in mixed_corpus:
        cs = components(I)
        comps += len(cs.components)
        bad += len(nerve_agreement(cs))
    record(7, bad == 0, f"{comps} components, {bad} disagreements")


def test_8_cocommutativity():
    rng = random.Random(8)
    n, bad = 0, 0
    Q = make_field("rationals")
    while n < 15:
        m = rng.randint(1, 4)
        K = random_complex(rng, m)
        params = []
        for _ in range(m):
            r = rng.randint(1, 3)
            params.append((r, rng.randint(1, r)))
        S = SpherePairInstance(K, tuple(params), Q)
        rep = check_cocommutativity(S.instance())
        n += 1
        bad += rep["status"] != "pass"
    record(8, bad == 0, f"{n} sphere-pair instances with k_i >= 1, {bad} failures")


def test_9_factor_coalgebras():
    rng = random.Random(9)
    bad = 0
    for i in range(24):
        P = random_pair(rng)
        F = ("rationals", "prime 2", "prime 3")[i % 3]
        rep = check_coalgebras(analyze_pair(P, F))
        bad += not all(all(v.values()) for v in rep.values())
    record(9, bad == 0, f"24 random simplicial pairs, {bad} failures")


def _run(*args):
    return subprocess.run([sys.executable, "-m", "momentangle", *args],
                          capture_output=True, check=True).stdout


def test_10_determinism():
    outs = []
    for name in ("two_points.json", "square.json", "empty_simplex.json"):
        path = os.path.join(DATA, name)
        for cmd in (["betti", path], ["ring", path], ["ring", path, "--coalgebra"],
                    ["betti", path, "--json"]):
            outs.append(_run(*cmd) == _run(*cmd))
    record(10, all(outs), f"{len(outs)} command pairs byte-identical")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))

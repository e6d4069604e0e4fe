"""Command line: betti, ring, dual, ad-check, verify.

Exit codes: 0 success, 1 unreadable or invalid input, 2 a check failed.
"""
from __future__ import annotations

import argparse
import json
import sys

from .duality import SpherePairInstance, ad_sweep, duality_check
from .hochster import betti, minimal_model
from .instancefile import InstanceError, load_instance
from .oracle import compare
from .simplicial import fmt_mask, vertices_of
from .structure import cover_complex, homology_coproduct


def _fmt_coef(F, c):
    if F.p is None:
        if c.denominator == 1:
            return str(int(c.numerator))
        return f"{int(c.numerator)}/{int(c.denominator)}"
    return str(int(c))


def _dims_str(d):
    return " ".join(f"{k}:{v}" for k, v in sorted(d.items()))


def _totals_list(d):
    if not d:
        return []
    return [d.get(k, 0) for k in range(max(d) + 1)]


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_betti(args, I):
    b = betti(I)
    status = 0
    cross = None
    if args.crosscheck:
        mm = minimal_model(I)[1]
        cc = cover_complex(I).homology_totals()
        comp = homology_coproduct(I).betti()
        cross = {"minimal_model": mm == b.totals, "cover": cc == b.totals,
                 "components": comp == b.totals}
        if not all(cross.values()):
            status = 2
    if args.json:
        out = {"field": str(I.field),
               "pairs": [{"sigma": vertices_of(s), "omega": vertices_of(w),
                          "dims": {str(k): v for k, v in sorted(row.items())}}
                         for (s, w), row in b.pairs.items() if row],
               "totals": b.totals_list()}
        if cross is not None:
            out["crosscheck"] = cross
        _emit(out)
        return status
    print(f"field {I.field}, m = {I.m}")
    for (s, w), row in b.pairs.items():
        if row:
            print(f"  sigma={fmt_mask(s)} omega={fmt_mask(w)}  {_dims_str(row)}")
    print("totals: " + " ".join(map(str, b.totals_list())))
    if cross is not None:
        for k, v in cross.items():
            print(f"crosscheck {k}: {'agree' if v else 'MISMATCH'}")
    return status


def _label(T, h):
    x, s, w, rel, a = T.basis[h]
    return f"(sigma={fmt_mask(s)}, omega={fmt_mask(w)}, x={list(x)}, s={rel}, #{a})"


def cmd_ring(args, I):
    T = homology_coproduct(I)
    F = I.field
    names = [f"h{h}" for h in range(len(T.basis))]
    if args.coalgebra:
        entries = []
        for h in range(len(T.basis)):
            terms = sorted(T.coproduct[h].items())
            entries.append((h, [(a, b, _fmt_coef(F, c)) for (a, b), c in terms]))
    else:
        prods = T.products()
        entries = sorted(((a, b), sorted((h, _fmt_coef(F, c)) for h, c in terms.items()))
                         for (a, b), terms in prods.items())
    if args.json:
        out = {"field": str(F),
               "basis": [{"name": names[h], "degree": T.degrees[h], "sigma": vertices_of(T.basis[h][1]),
                          "omega": vertices_of(T.basis[h][2]), "x": list(T.basis[h][0]),
                          "s": T.basis[h][3], "index": T.basis[h][4]} for h in range(len(T.basis))],
               "unit": names[T.unit]}
        if args.coalgebra:
            out["coproduct"] = {names[h]: [[c, names[a], names[b]] for a, b, c in terms]
                                for h, terms in entries}
        else:
            out["products"] = [{"left": names[a], "right": names[b],
                                "value": [[c, names[h]] for h, c in terms]}
                               for (a, b), terms in entries]
        _emit(out)
        return 0
    kind = "homology" if args.coalgebra else "cohomology"
    print(f"{kind} basis over {F}:")
    for h in range(len(T.basis)):
        print(f"  {names[h]}  degree {T.degrees[h]}  {_label(T, h)}")
    if args.coalgebra:
        print("coproducts:")
        for h, terms in entries:
            body = " + ".join(f"{c} {names[a]}⊗{names[b]}" for a, b, c in terms) or "0"
            print(f"  Δ {names[h]} = {body}")
    else:
        print("nonzero products (dual basis):")
        for (a, b), terms in entries:
            body = " + ".join(f"{c} {names[h]}" for h, c in terms)
            print(f"  {names[a]} * {names[b]} = {body}")
    return 0


def _sphere_params(I):
    params = []
    for j, fd in enumerate(I.factors):
        p = fd.provenance
        if p.get("kind") != "sphere_pair" or fd.pair is not None:
            raise InstanceError(f"$.factors[{j}]", "dual needs sphere_pair factors")
        params.append((p["r"], p["k"]))
    return tuple(params)


def cmd_dual(args, I):
    S = SpherePairInstance(I.K, _sphere_params(I), I.field)
    rep = duality_check(S)
    n = len(rep["pairs"])
    if args.json:
        _emit({"passed": rep["passed"], "R": rep["R"], "pairs": [
            {"sigma": vertices_of(r["sigma"]), "omega": vertices_of(r["omega"]),
             "sigma_tilde": vertices_of(r["sigma_tilde"]),
             "dims": {str(k): v for k, v in sorted(r["dims"].items())},
             "dual_dims": {str(k): v for k, v in sorted(r["dual_dims"].items())},
             "ok": r["ok"]} for r in rep["pairs"]]})
    else:
        for r in rep["pairs"]:
            print(f"  sigma={fmt_mask(r['sigma'])} omega={fmt_mask(r['omega'])} "
                  f"| {_dims_str(r['dims']) or '-'} <-> {_dims_str(r['dual_dims']) or '-'} "
                  f"{'ok' if r['ok'] else 'FAIL'}")
        bad = sum(not r["ok"] for r in rep["pairs"])
        if rep["passed"]:
            print(f"duality: PASS (all {n} pairs, d <-> {rep['R']}-d-1)")
        else:
            print(f"duality: FAIL ({bad} of {n} pairs)")
    return 0 if rep["passed"] else 2


def cmd_adcheck(args):
    rep = ad_sweep(exhaustive=args.exhaustive, samples=args.samples, max_t=args.max_t,
                   seed=args.seed, F=args.field or "rationals")
    if args.json:
        _emit({"checked": rep["checked"], "ok": rep["ok"],
               "failures": [{"t": t, "faces": sorted(L.faces)} for t, L in rep["failures"]]})
    elif rep["ok"]:
        print(f"shift t-s-3 confirmed on {rep['checked']} complexes")
    else:
        print(f"shift t-s-3 FAILS on {len(rep['failures'])} of {rep['checked']} complexes")
        for t, L in rep["failures"][:10]:
            print(f"  t={t} {L!r}")
    return 0 if rep["ok"] else 2


def cmd_verify(args, I):
    rep = compare(I, rings=not args.no_ring)
    keys = [k for k in ("hochster", "minimal_model", "components", "cover", "oracle") if k in rep]
    if args.json:
        out = {k: _totals_list(rep[k]) for k in keys}
        out["betti_agree"] = rep["betti_agree"]
        if "rings_agree" in rep:
            out["rings_agree"] = rep["rings_agree"]
            out["mult_ranks"] = {f"{p},{q}": v for (p, q), v in sorted(rep["mult_ranks"].items())}
            out["commutator_ranks"] = {f"{p},{q}": v for (p, q), v
                                       in sorted(rep["commutator_ranks"].items()) if v}
        out["ok"] = rep["ok"]
        _emit(out)
    else:
        for k in keys:
            mark = "=" if rep[k] == rep["oracle"] else "!"
            print(f"  {k:<14}{mark} " + " ".join(map(str, _totals_list(rep[k]))))
        print(f"betti: {'agree' if rep['betti_agree'] else 'MISMATCH'}")
        if "rings_agree" in rep:
            print(f"mult ranks: {'agree' if rep['rings_agree'] else 'MISMATCH'}")
            for (p, q), v in sorted(rep["mult_ranks"].items()):
                w = rep["oracle_mult_ranks"].get((p, q))
                if v or w:
                    print(f"  H^{p} x H^{q} -> H^{p + q}: rank {v}" + ("" if v == w else f" (oracle {w})"))
            for (p, q), v in sorted(rep["commutator_ranks"].items()):
                w = rep["oracle_commutator_ranks"].get((p, q))
                if v or w:
                    print(f"  graded commutator on H^{p} x H^{q}: rank {v} (oracle {w})")
    return 0 if rep["ok"] else 2


def build_parser():
    ap = argparse.ArgumentParser(prog="momentangle",
                                 description="Homology of polyhedral products Z_K(X,A) over a field.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("path", help="instance JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--field", help="override the field, e.g. 'rationals' or 'prime 3'")
        return p

    p = with_file("betti", "bigraded Betti numbers")
    p.add_argument("--crosscheck", action="store_true",
                   help="also run the minimal model and the cover complex")
    p = with_file("ring", "cohomology ring structure constants")
    p.add_argument("--coalgebra", action="store_true", help="list the homology coproduct instead")
    with_file("dual", "duality with the complementary sphere-pair instance")
    p = with_file("verify", "compare every pipeline with the brute-force oracle")
    p.add_argument("--no-ring", action="store_true", help="skip the multiplication ranks")
    p = sub.add_parser("ad-check", help="combinatorial Alexander duality sweep")
    p.add_argument("--exhaustive", type=int, default=4, metavar="N",
                   help="check every complex on at most N vertices")
    p.add_argument("--samples", type=int, default=100, help="random complexes to add")
    p.add_argument("--max-t", type=int, default=7, help="ground set size bound for samples")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--field", help="coefficient field")
    p.add_argument("--json", action="store_true")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "ad-check":
            return cmd_adcheck(args)
        I = load_instance(args.path, args.field)
        handler = {"betti": cmd_betti, "ring": cmd_ring, "dual": cmd_dual,
                   "verify": cmd_verify}[args.command]
        return handler(args, I)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""JSON instance files.

    {"field": {"type": "rational"} | {"type": "prime", "p": N},
     "complex": {"m": M, "facets": [[1, 2], ...], "void": false},
     "factors": [{"kind": "simplicial_pair", "x_facets": ..., "a_facets": ...},
                 {"kind": "sphere_pair", "r": R, "k": K},
                 {"kind": "disk_sphere", "n": N},
                 {"kind": "raw", "elements": ..., "unit": ..., "coproduct_A": ..., "coproduct_X": ...}]}

Vertices are 1-based.  Errors carry the JSON path of the offending value.
"""
from __future__ import annotations

import json

from .exactlin import make_field
from .factors import SimplicialPair, analyze_pair, disk_sphere, from_raw, sphere_pair
from .hochster import Instance
from .simplicial import from_facets


class InstanceError(ValueError):
    def __init__(self, path, msg):
        super().__init__(f"{path}: {msg}")
        self.path = path


def _need(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise InstanceError(path, "expected an object")
    if key not in obj:
        raise InstanceError(f"{path}.{key}", "missing")
    v = obj[key]
    if kind is int and (not isinstance(v, int) or isinstance(v, bool)):
        raise InstanceError(f"{path}.{key}", f"expected an integer, got {v!r}")
    if kind is list and not isinstance(v, list):
        raise InstanceError(f"{path}.{key}", "expected a list")
    return v


def parse_field(obj, path="$.field"):
    if isinstance(obj, str):
        try:
            return make_field(obj)
        except ValueError as exc:
            raise InstanceError(path, str(exc)) from None
    t = _need(obj, "type", path)
    if t == "rational":
        return make_field("rationals")
    if t == "prime":
        p = _need(obj, "p", path, int)
        try:
            return make_field(f"prime {p}")
        except ValueError as exc:
            raise InstanceError(f"{path}.p", str(exc)) from None
    raise InstanceError(f"{path}.type", f"unknown field type {t!r}")


def _facets(obj, key, path, m):
    facs = _need(obj, key, path, list)
    out = []
    for i, f in enumerate(facs):
        p = f"{path}.{key}[{i}]"
        if not isinstance(f, list):
            raise InstanceError(p, "expected a list of vertices")
        for j, v in enumerate(f):
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= m:
                raise InstanceError(f"{p}[{j}]", f"vertex {v!r} outside [{m}]")
        out.append(f)
    return out


def parse_complex(obj, path="$.complex"):
    m = _need(obj, "m", path, int)
    if not 0 <= m <= 30:
        raise InstanceError(f"{path}.m", "ground set size must lie in 0..30")
    void = obj.get("void", False)
    if not isinstance(void, bool):
        raise InstanceError(f"{path}.void", "expected true or false")
    facs = _facets(obj, "facets", path, m)
    if void and facs:
        raise InstanceError(f"{path}.facets", "a void complex has no facets")
    return from_facets(m, facs, void=void)


def parse_factor(obj, F, path):
    kind = _need(obj, "kind", path)
    try:
        if kind == "sphere_pair":
            return sphere_pair(_need(obj, "r", path, int), _need(obj, "k", path, int), F)
        if kind == "disk_sphere":
            return disk_sphere(_need(obj, "n", path, int), F)
        if kind == "simplicial_pair":
            xs = _need(obj, "x_facets", path, list)
            n = obj.get("m")
            if n is None:
                n = max([v for f in xs if isinstance(f, list) for v in f
                         if isinstance(v, int)] + [1])
            elif not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 30:
                raise InstanceError(f"{path}.m", "expected an integer in 1..30")
            X = from_facets(n, _facets(obj, "x_facets", path, n))
            A = from_facets(n, _facets(obj, "a_facets", path, n))
            return analyze_pair(SimplicialPair(X, A), F)
        if kind == "raw":
            return from_raw(obj, F)
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError(path, str(exc)) from None
    raise InstanceError(f"{path}.kind", f"unknown factor kind {kind!r}")


def parse_instance(obj, field_override=None) -> Instance:
    if not isinstance(obj, dict):
        raise InstanceError("$", "expected an object")
    if field_override is not None:
        F = parse_field(field_override, "--field")
    else:
        F = parse_field(_need(obj, "field", "$"))
    K = parse_complex(_need(obj, "complex", "$"))
    facs = _need(obj, "factors", "$", list)
    if len(facs) != K.m:
        raise InstanceError("$.factors", f"expected {K.m} factors, got {len(facs)}")
    factors = [parse_factor(f, F, f"$.factors[{i}]") for i, f in enumerate(facs)]
    return Instance(F, K, factors)


def load_instance(path, field_override=None) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceError("$", f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise InstanceError("$", f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(obj, field_override)


def dump_instance(I: Instance) -> dict:
    """Instance as JSON data; simplicial and sphere factors keep their short forms."""
    F = I.field
    field = {"type": "rational"} if F.p is None else {"type": "prime", "p": F.p}
    K = I.K.to_json()
    cx = {"m": K["m"], "facets": K["facets"]}
    if K["void"]:
        cx["void"] = True
    factors = []
    for fd in I.factors:
        prov = fd.provenance
        if prov.get("kind") == "sphere_pair" and fd.pair is None:
            factors.append({"kind": "sphere_pair", "r": prov["r"], "k": prov["k"]})
        elif fd.pair is not None:
            factors.append(fd.pair.to_json())
        else:
            factors.append(fd.to_raw())
    return {"field": field, "complex": cx, "factors": factors}

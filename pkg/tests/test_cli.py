import json
import os
import random

import pytest

from momentangle.cli import main
from momentangle.corpus import random_instance
from momentangle.hochster import betti
from momentangle.instancefile import InstanceError, dump_instance, load_instance, parse_instance

DATA = os.path.join(os.path.dirname(__file__), "data")


def path(name):
    return os.path.join(DATA, name)


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_betti_totals(capsys):
    code, out, _ = run(capsys, "betti", path("two_points.json"))
    assert code == 0 and out.splitlines()[-1] == "totals: 1 0 0 1"
    code, out, _ = run(capsys, "betti", path("square.json"))
    assert out.splitlines()[-1] == "totals: 1 0 0 2 0 0 1"


def test_betti_json_and_crosscheck(capsys):
    code, out, _ = run(capsys, "betti", path("square.json"), "--json", "--crosscheck")
    data = json.loads(out)
    assert code == 0
    assert data["totals"] == [1, 0, 0, 2, 0, 0, 1]
    assert all(data["crosscheck"].values())


def test_field_override(capsys):
    code, out, _ = run(capsys, "betti", path("square.json"), "--field", "prime 2")
    assert code == 0 and out.startswith("field GF(2)")


def test_ring_square(capsys):
    code, out, _ = run(capsys, "ring", path("square.json"), "--json")
    data = json.loads(out)
    degree = {b["name"]: b["degree"] for b in data["basis"]}
    positive = [p for p in data["products"] if degree[p["left"]] and degree[p["right"]]]
    assert len(positive) == 2
    assert {p["left"] for p in positive} == {p["right"] for p in positive}
    assert all(degree[p["value"][0][1]] == 6 for p in positive)


def test_ring_unit_products(capsys):
    code, out, _ = run(capsys, "ring", path("mixed.json"), "--json")
    data = json.loads(out)
    unit = data["unit"]
    lefts = {p["right"] for p in data["products"] if p["left"] == unit}
    assert lefts == {b["name"] for b in data["basis"]}


def test_coalgebra_listing(capsys):
    code, out, _ = run(capsys, "ring", path("two_points.json"), "--coalgebra")
    assert code == 0 and "Δ h0 = 1 h0⊗h0" in out


def test_dual(capsys):
    code, out, _ = run(capsys, "dual", path("spheres.json"))
    assert code == 0 and out.splitlines()[-1].startswith("duality: PASS")
    code, _, err = run(capsys, "dual", path("square.json"))
    assert code == 1 and "sphere_pair" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", path("two_points.json"))
    assert code == 0 and "betti: agree" in out and "mult ranks: agree" in out


def test_ad_check(capsys):
    code, out, _ = run(capsys, "ad-check", "--exhaustive", "3", "--samples", "5")
    assert code == 0 and out.strip() == "shift t-s-3 confirmed on 34 complexes"


def test_bad_vertex(capsys):
    code, _, err = run(capsys, "betti", path("bad_vertex.json"))
    assert code == 1
    assert "$.complex.facets[0][0]" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "betti", path("nope.json"))
    assert code == 1 and err.startswith("error: $")


@pytest.mark.parametrize("obj, where", [
    ([], "$"),
    ({"field": {"type": "prime", "p": 4}, "complex": {"m": 1, "facets": []}, "factors": []}, "$.field.p"),
    ({"field": {"type": "rational"}, "complex": {"m": 1, "facets": []}, "factors": []}, "$.factors"),
    ({"field": {"type": "rational"}, "complex": {"m": 1, "facets": []},
      "factors": [{"kind": "torus"}]}, "$.factors[0].kind"),
    ({"field": {"type": "rational"}, "complex": {"m": "two", "facets": []}, "factors": []}, "$.complex.m"),
])
def test_error_paths(obj, where):
    with pytest.raises(InstanceError) as exc:
        parse_instance(obj)
    assert exc.value.path == where


def test_json_round_trip():
    rng = random.Random(12)
    for _ in range(10):
        I, _ = random_instance(rng, max_m=4)
        data = json.loads(json.dumps(dump_instance(I)))
        J = parse_instance(data)
        assert J.K == I.K and J.field == I.field
        assert all(a.same_content(b) for a, b in zip(I.factors, J.factors))
        assert betti(J).totals == betti(I).totals


def test_load_all_data_files():
    for name in ("two_points.json", "square.json", "empty_simplex.json", "spheres.json", "mixed.json"):
        load_instance(path(name))

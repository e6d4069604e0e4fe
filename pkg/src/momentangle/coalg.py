"""Identities for coproduct tables.

A table maps each basis key to a dict ``{(left, right): coefficient}``.
"""
from __future__ import annotations


def _add(F, acc, key, v):
    w = F.norm(acc.get(key, F.zero) + v)
    if w:
        acc[key] = w
    else:
        acc.pop(key, None)


def twist(F, table, degree):
    """τ∘Δ with τ(a⊗b) = (-1)^{|a||b|} b⊗a."""
    out = {}
    for x, terms in table.items():
        t = {}
        for (a, b), c in terms.items():
            s = c if (degree(a) * degree(b)) % 2 == 0 else F.neg(c)
            _add(F, t, (b, a), s)
        out[x] = t
    return out


def is_cocommutative(F, table, degree):
    tw = twist(F, table, degree)
    return all(tw[x] == {k: v for k, v in table[x].items() if v} for x in table)


def coassoc_defect(F, table, keys=None):
    """Keys x where (Δ⊗1)Δx != (1⊗Δ)Δx.  Elements missing from the table count as
    having an unknown coproduct and make x defective."""
    bad = []
    for x in (table if keys is None else keys):
        left, right = {}, {}
        ok = True
        for (a, b), c in table[x].items():
            ta = table.get(a)
            tb = table.get(b)
            if ta is None or tb is None:
                ok = False
                break
            for (a1, a2), c1 in ta.items():
                _add(F, left, (a1, a2, b), c * c1)
            for (b1, b2), c2 in tb.items():
                _add(F, right, (a, b1, b2), c * c2)
        if not ok or left != right:
            bad.append(x)
    return bad


def is_coassociative(F, table, keys=None):
    return not coassoc_defect(F, table, keys)


def counit_defect(F, table, unit):
    """Keys x violating (ε⊗1)Δx = x = (1⊗ε)Δx, ε the dual of ``unit``."""
    bad = []
    for x, terms in table.items():
        left, right = {}, {}
        for (a, b), c in terms.items():
            if a == unit:
                _add(F, left, b, c)
            if b == unit:
                _add(F, right, a, c)
        want = {x: F.one}
        if left != want or right != want:
            bad.append(x)
    return bad


def degree_defect(table, degree):
    return [x for x, terms in table.items()
            if any(degree(a) + degree(b) != degree(x) for (a, b) in terms)]

"""Reflexive, symmetric, transitive and equivalence closures of relations."""

from __future__ import annotations

from .relcore import Relation, converse, union


def reflexive_closure(r: Relation) -> Relation:
    return Relation(r.universe, tuple(row | (1 << x) for x, row in enumerate(r.rows)))


def symmetric_closure(r: Relation) -> Relation:
    return union(r, converse(r))


def transitive_closure(r: Relation) -> Relation:
    """Warshall's algorithm, OR-ing whole rows at each pivot."""
    rows = list(r.rows)
    n = len(rows)
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        if not rk:
            continue
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    return Relation(r.universe, tuple(rows))


def ts_closure(r: Relation) -> Relation:
    return transitive_closure(symmetric_closure(r))


def equivalence_closure(r: Relation) -> Relation:
    """``e(R) = r(t(s(R)))``, the least equivalence relation containing ``r``."""
    return reflexive_closure(ts_closure(r))


def rst_closure(r: Relation) -> Relation:
    """``r(s(t(R)))``; not an equivalence in general."""
    return reflexive_closure(symmetric_closure(transitive_closure(r)))


CLOSURES = {
    "r": reflexive_closure,
    "s": symmetric_closure,
    "t": transitive_closure,
    "e": equivalence_closure,
    "ts": ts_closure,
    "rst": rst_closure,
}


def closure(r: Relation, kind: str) -> Relation:
    """Apply closures named by ``kind`` right to left, e.g. ``"rts"`` is r(t(s(R)))."""
    if kind in CLOSURES:
        return CLOSURES[kind](r)
    steps = {"r": reflexive_closure, "s": symmetric_closure, "t": transitive_closure}
    if not kind or any(c not in steps for c in kind):
        raise ValueError(f"unknown closure kind {kind!r}")
    for c in reversed(kind):
        r = steps[c](r)
    return r


def e_equals_ts_condition(r: Relation) -> bool:
    """True iff every element has a successor or a predecessor.

    This is exactly the case where adding the identity to ts(R) changes
    nothing, i.e. ``equivalence_closure(r) == ts_closure(r)``.
    """
    touched = 0
    for x, row in enumerate(r.rows):
        if row:
            touched |= row | (1 << x)
    return touched == r.universe.full_mask

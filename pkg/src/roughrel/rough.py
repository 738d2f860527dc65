"""Lower/upper approximations and neighbourhood unions of subsets."""

from __future__ import annotations

from dataclasses import dataclass

from .relcore import Relation, Subset, _same_universe, iter_bits


@dataclass(frozen=True, slots=True)
class ApproxPair:
    lower: Subset
    upper: Subset


def _check(r: Relation, x_set: Subset) -> None:
    _same_universe(r.universe, x_set.universe)


def succ_set(r: Relation, x_set: Subset) -> Subset:
    """Union of the successor neighbourhoods of the members of ``x_set``."""
    _check(r, x_set)
    rows = r.rows
    acc = 0
    for x in iter_bits(x_set.mask):
        acc |= rows[x]
    return Subset(r.universe, acc)


def pred_set(r: Relation, x_set: Subset) -> Subset:
    """Union of the predecessor neighbourhoods of the members of ``x_set``."""
    _check(r, x_set)
    rows = r.rows
    acc = 0
    for x in iter_bits(x_set.mask):
        for y, row in enumerate(rows):
            if row >> x & 1:
                acc |= 1 << y
    return Subset(r.universe, acc)


def v_set(r: Relation, x_set: Subset) -> Subset:
    return succ_set(r, x_set) | pred_set(r, x_set)


def lower(r: Relation, x_set: Subset) -> Subset:
    _check(r, x_set)
    outside = ~x_set.mask
    acc = 0
    for x, row in enumerate(r.rows):
        if not row & outside:
            acc |= 1 << x
    return Subset(r.universe, acc)


def upper(r: Relation, x_set: Subset) -> Subset:
    _check(r, x_set)
    mask = x_set.mask
    acc = 0
    for x, row in enumerate(r.rows):
        if row & mask:
            acc |= 1 << x
    return Subset(r.universe, acc)


def approximate(r: Relation, x_set: Subset) -> ApproxPair:
    return ApproxPair(lower(r, x_set), upper(r, x_set))


def is_inner_definable(r: Relation, x_set: Subset) -> bool:
    return lower(r, x_set) == x_set


def is_outer_definable(r: Relation, x_set: Subset) -> bool:
    return upper(r, x_set) == x_set


def is_definable(r: Relation, x_set: Subset) -> bool:
    return is_inner_definable(r, x_set) and is_outer_definable(r, x_set)

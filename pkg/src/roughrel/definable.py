"""Inner/outer/definable set families, quotient sets, and family comparison.

Two routes compute the definable family ``D(U, R)``:

* the *naive* route tests every subset of the universe against the lower and
  upper approximations, so it is exponential in ``n`` and capped;
* the *fast* route uses the structural result that a non-serial relation has
  no definable sets at all, while for a serial relation the definable sets
  are exactly the unions of connected components of ``R | R^-1``.

The fast route is what :func:`same_definable_family` reasons with; the naive
route is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .closures import ts_closure
from .relcore import (
    Relation,
    RelationError,
    Subset,
    Universe,
    _same_universe,
    is_equivalence,
    is_serial,
    iter_bits,
)

DEFAULT_MAX_POWERSET = 20
MAX_MATERIALIZED_COMPONENTS = 20


class PowersetTooLargeError(RelationError):
    pass


class FamilyTooLargeError(RelationError):
    pass


def _lowbit_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True, slots=True)
class SetFamily:
    """Subsets of a universe, kept sorted by ascending bitmask value."""

    universe: Universe
    masks: tuple[int, ...]

    def __post_init__(self):
        masks = self.masks
        if any(b <= a for a, b in zip(masks, masks[1:])):
            raise RelationError("set family masks must be strictly ascending; use SetFamily.of()")
        if masks and (masks[0] < 0 or masks[-1] >> self.universe.size):
            raise RelationError("set family member outside the universe")

    @classmethod
    def of(cls, universe: Universe, members: Iterable) -> SetFamily:
        """Canonicalise ``members`` (Subsets or raw masks) into a family."""
        masks = set()
        for m in members:
            if isinstance(m, Subset):
                _same_universe(universe, m.universe)
                m = m.mask
            masks.add(int(m))
        return cls(universe, tuple(sorted(masks)))

    @property
    def members(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.universe, m) for m in self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __len__(self):
        return len(self.masks)

    def __contains__(self, x_set: Subset) -> bool:
        return x_set.universe == self.universe and x_set.mask in set(self.masks)

    def label_sets(self) -> list[list[str]]:
        return [s.labels() for s in self.members]


@dataclass(frozen=True, slots=True)
class Partition:
    """Disjoint nonempty blocks covering the universe, ordered by least element."""

    universe: Universe
    masks: tuple[int, ...]

    def __post_init__(self):
        seen = 0
        for block in self.masks:
            if block == 0:
                raise RelationError("partition blocks must be nonempty")
            if block < 0 or block >> self.universe.size:
                raise RelationError("partition block outside the universe")
            if block & seen:
                raise RelationError("partition blocks must be pairwise disjoint")
            seen |= block
        if seen != self.universe.full_mask:
            raise RelationError("partition blocks must cover the universe")
        mins = [_lowbit_index(b) for b in self.masks]
        if mins != sorted(mins):
            raise RelationError("partition blocks must be ordered by least element; use Partition.of()")

    @classmethod
    def of(cls, universe: Universe, blocks: Iterable) -> Partition:
        masks = []
        for b in blocks:
            if isinstance(b, Subset):
                _same_universe(universe, b.universe)
                b = b.mask
            masks.append(int(b))
        return cls(universe, tuple(sorted(masks, key=lambda m: (m & -m))))

    @property
    def blocks(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.universe, m) for m in self.masks)

    def __len__(self):
        return len(self.masks)

    def block_of(self, x: int) -> Subset:
        for m in self.masks:
            if m >> x & 1:
                return Subset(self.universe, m)
        raise RelationError(f"element index {x} out of range")

    def label_blocks(self) -> list[list[str]]:
        return [b.labels() for b in self.blocks]


@dataclass(frozen=True, slots=True)
class EquivalenceReport:
    equal: bool
    reason: str
    witness: Subset | None = None

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.labels(),
        }


# --- naive (powerset) route -------------------------------------------------


def _approximation_tables(rows: tuple[int, ...], n: int):
    """Lower and upper approximation of every subset mask ``0 .. 2**n - 1``."""
    xs = np.arange(1 << n, dtype=np.int64)
    outside = ~xs
    low = np.zeros_like(xs)
    up = np.zeros_like(xs)
    for x, row in enumerate(rows):
        low |= ((outside & row) == 0).astype(np.int64) << x
        up |= ((xs & row) != 0).astype(np.int64) << x
    return xs, low, up


def _check_cap(n: int, max_powerset: int) -> None:
    if n > max_powerset:
        raise PowersetTooLargeError(
            f"powerset too large: universe of size {n} exceeds the enumeration cap of {max_powerset}"
        )


def naive_family_masks(r: Relation, max_powerset: int = DEFAULT_MAX_POWERSET):
    """``(inner, outer, definable)`` as ascending lists of subset masks."""
    n = r.size
    _check_cap(n, max_powerset)
    xs, low, up = _approximation_tables(r.rows, n)
    inner = low == xs
    outer = up == xs
    return xs[inner].tolist(), xs[outer].tolist(), xs[inner & outer].tolist()


def inner_family_naive(r: Relation, max_powerset: int = DEFAULT_MAX_POWERSET) -> SetFamily:
    return SetFamily(r.universe, tuple(naive_family_masks(r, max_powerset)[0]))


def outer_family_naive(r: Relation, max_powerset: int = DEFAULT_MAX_POWERSET) -> SetFamily:
    return SetFamily(r.universe, tuple(naive_family_masks(r, max_powerset)[1]))


def definable_family_naive(r: Relation, max_powerset: int = DEFAULT_MAX_POWERSET) -> SetFamily:
    return SetFamily(r.universe, tuple(naive_family_masks(r, max_powerset)[2]))


# --- fast (structural) route ------------------------------------------------


def component_masks(r: Relation) -> list[int]:
    """Connected components of the undirected graph of ``r | r^-1``, by least element."""
    adj = list(r.rows)
    for x, row in enumerate(r.rows):
        bit = 1 << x
        for y in iter_bits(row):
            adj[y] |= bit
    comps = []
    seen = 0
    for x in range(len(adj)):
        if seen >> x & 1:
            continue
        comp = frontier = 1 << x
        while frontier:
            reach = 0
            for z in iter_bits(frontier):
                reach |= adj[z]
            frontier = reach & ~comp
            comp |= frontier
        comps.append(comp)
        seen |= comp
    return comps


def definable_components(r: Relation) -> Partition | None:
    """Blocks whose unions are exactly the definable sets; ``None`` if ``r`` is not serial."""
    if not is_serial(r):
        return None
    return Partition(r.universe, tuple(component_masks(r)))


def definable_family_fast(r: Relation, max_components: int = MAX_MATERIALIZED_COMPONENTS) -> SetFamily:
    if not is_serial(r):
        return SetFamily(r.universe, ())
    comps = component_masks(r)
    if len(comps) > max_components:
        raise FamilyTooLargeError(
            f"family too large to materialize: {len(comps)} components give 2**{len(comps)} "
            "definable sets; use definable_components() and definable_count() instead"
        )
    unions = [0]
    for comp in comps:
        unions += [u | comp for u in unions]
    return SetFamily(r.universe, tuple(sorted(unions)))


def definable_count(r: Relation) -> int:
    if not is_serial(r):
        return 0
    return 1 << len(component_masks(r))


# --- quotient sets ------------------------------------------------------------


def equivalence_classes(e: Relation) -> Partition:
    if not is_equivalence(e):
        raise RelationError("equivalence_classes needs an equivalence relation")
    blocks = []
    covered = 0
    for x, row in enumerate(e.rows):
        if not covered >> x & 1:
            blocks.append(row)
            covered |= row
    return Partition(e.universe, tuple(blocks))


def partition_to_relation(p: Partition) -> Relation:
    if not isinstance(p, Partition):
        raise RelationError("partition_to_relation needs a Partition")
    rows = [0] * p.universe.size
    for block in p.masks:
        for x in iter_bits(block):
            rows[x] = block
    return Relation(p.universe, tuple(rows))


# --- comparing two relations ---------------------------------------------------


def _split_block(t1: Relation, t2: Relation) -> int | None:
    """First class of ``t1`` that is not a union of ``t2`` classes, if any."""
    covered = 0
    for x, block in enumerate(t1.rows):
        if covered >> x & 1:
            continue
        covered |= block
        for y in iter_bits(block):
            if t2.rows[y] & ~block:
                return block
    return None


def same_definable_family(r1: Relation, r2: Relation) -> EquivalenceReport:
    """Decide whether ``r1`` and ``r2`` have the same definable family.

    They do iff both are non-serial (both families empty), or both are serial
    and their ts-closures coincide.  When both are serial but the closures
    differ, the report carries a subset definable under exactly one of them.
    """
    u = _same_universe(r1.universe, r2.universe)
    s1, s2 = is_serial(r1), is_serial(r2)
    if not s1 and not s2:
        return EquivalenceReport(True, "both-non-serial")
    if s1 != s2:
        return EquivalenceReport(False, "serial-mismatch")
    t1, t2 = ts_closure(r1), ts_closure(r2)
    if t1 == t2:
        return EquivalenceReport(True, "ts-closures-equal")
    # both serial, so t1 and t2 are equivalence relations
    block = _split_block(t1, t2)
    if block is None:
        block = _split_block(t2, t1)
    return EquivalenceReport(False, "ts-closures-differ", Subset(u, block))


def equivalence_relations_equal_iff_same_family_check(e1: Relation, e2: Relation) -> bool:
    """Equality test for two equivalence relations.

    Two equivalence relations have the same definable family exactly when
    they are equal, so this doubles as the family-equality verdict.
    """
    _same_universe(e1.universe, e2.universe)
    if not is_equivalence(e1) or not is_equivalence(e2):
        raise RelationError("both inputs must be equivalence relations")
    return e1 == e2

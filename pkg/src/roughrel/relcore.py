"""Finite universes, subsets and binary relations.

Subsets and relation rows are Python ints used as bitsets: bit ``i`` stands
for the element with index ``i``.  A relation stores one row per element,
``rows[x]`` having bit ``y`` set iff ``x R y``.

Composition follows the convention ``F o G = {(x, y) | exists z: x G z and
z F y}``, i.e. ``compose(f, g)`` applies ``g`` first and ``f`` second.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class RelationError(ValueError):
    """Base class for domain errors raised by this package."""


class UniverseMismatchError(RelationError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class Universe:
    """An ordered, nonempty collection of distinct element labels."""

    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        if not labels:
            raise RelationError("universe must contain at least one element")
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            dupes = sorted({lab for lab in labels if labels.count(lab) > 1})
            raise RelationError(f"duplicate universe labels: {', '.join(dupes)}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", index)

    @classmethod
    def of_size(cls, n: int, start: int = 1) -> Universe:
        """Universe labelled ``start, start+1, ...`` (1-based by default)."""
        if n < 1:
            raise RelationError("universe must contain at least one element")
        return cls(tuple(str(start + i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise RelationError(f"unknown element label {label!r}") from None

    def check_index(self, x: int) -> int:
        if not 0 <= x < len(self.labels):
            raise RelationError(f"element index {x} out of range for universe of size {self.size}")
        return x

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return str(label) in self._index


def _same_universe(a: Universe, b: Universe) -> Universe:
    if a is not b and a != b:
        raise UniverseMismatchError("operands live on different universes")
    return a


@dataclass(frozen=True, slots=True)
class Subset:
    """A subset of a universe, stored as a bitmask."""

    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.universe.size:
            raise RelationError("subset mask has bits outside the universe")

    @classmethod
    def from_labels(cls, universe: Universe, labels: Iterable) -> Subset:
        mask = 0
        for lab in labels:
            mask |= 1 << universe.index(lab)
        return cls(universe, mask)

    @classmethod
    def from_indices(cls, universe: Universe, indices: Iterable[int]) -> Subset:
        mask = 0
        for i in indices:
            mask |= 1 << universe.check_index(i)
        return cls(universe, mask)

    @classmethod
    def empty(cls, universe: Universe) -> Subset:
        return cls(universe, 0)

    @classmethod
    def full(cls, universe: Universe) -> Subset:
        return cls(universe, universe.full_mask)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1) if x >= 0 else False

    def __bool__(self):
        return self.mask != 0

    def labels(self) -> list[str]:
        return [self.universe.labels[i] for i in iter_bits(self.mask)]

    def complement(self) -> Subset:
        return Subset(self.universe, self.universe.full_mask & ~self.mask)

    def issubset(self, other: Subset) -> bool:
        _same_universe(self.universe, other.universe)
        return self.mask & ~other.mask == 0

    def __or__(self, other: Subset) -> Subset:
        return Subset(_same_universe(self.universe, other.universe), self.mask | other.mask)

    def __and__(self, other: Subset) -> Subset:
        return Subset(_same_universe(self.universe, other.universe), self.mask & other.mask)

    def __sub__(self, other: Subset) -> Subset:
        return Subset(_same_universe(self.universe, other.universe), self.mask & ~other.mask)

    def __invert__(self) -> Subset:
        return self.complement()

    def __le__(self, other: Subset) -> bool:
        return self.issubset(other)

    def __str__(self):
        return "{" + ",".join(self.labels()) + "}"


@dataclass(frozen=True, slots=True)
class Relation:
    """A binary relation on a universe as a dense bit matrix (one int per row)."""

    universe: Universe
    rows: tuple[int, ...]

    def __post_init__(self):
        n = self.universe.size
        if len(self.rows) != n:
            raise RelationError(f"relation needs exactly {n} rows, got {len(self.rows)}")
        if min(self.rows) < 0 or max(self.rows) >> n:
            raise RelationError("relation row has bits outside the universe")

    @classmethod
    def empty(cls, universe: Universe) -> Relation:
        return cls(universe, (0,) * universe.size)

    @classmethod
    def full(cls, universe: Universe) -> Relation:
        return cls(universe, (universe.full_mask,) * universe.size)

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple]) -> Relation:
        """Build from ``(a, b)`` label pairs; labels are matched via ``str()``."""
        rows = [0] * universe.size
        for a, b in pairs:
            rows[universe.index(a)] |= 1 << universe.index(b)
        return cls(universe, tuple(rows))

    @classmethod
    def from_index_pairs(cls, universe: Universe, pairs: Iterable[tuple[int, int]]) -> Relation:
        rows = [0] * universe.size
        for x, y in pairs:
            rows[universe.check_index(x)] |= 1 << universe.check_index(y)
        return cls(universe, tuple(rows))

    @classmethod
    def from_matrix(cls, universe: Universe, matrix: Sequence[Sequence]) -> Relation:
        rows = []
        for line in matrix:
            if len(line) != universe.size:
                raise RelationError("matrix must be square over the universe")
            rows.append(sum(1 << y for y, cell in enumerate(line) if cell))
        return cls(universe, tuple(rows))

    @classmethod
    def from_code(cls, universe: Universe, code: int) -> Relation:
        """Decode the integer encoding where cell ``(x, y)`` is bit ``x*n + y``."""
        n = universe.size
        if code < 0 or code >> (n * n):
            raise RelationError(f"relation code out of range for n={n}")
        width = (1 << n) - 1
        return cls(universe, tuple((code >> (x * n)) & width for x in range(n)))

    @property
    def code(self) -> int:
        n = self.universe.size
        out = 0
        for x, row in enumerate(self.rows):
            out |= row << (x * n)
        return out

    @property
    def size(self) -> int:
        return self.universe.size

    def pairs(self) -> list[tuple[int, int]]:
        """Index pairs in canonical (row-major) order."""
        return [(x, y) for x, row in enumerate(self.rows) for y in iter_bits(row)]

    def label_pairs(self) -> list[tuple[str, str]]:
        labels = self.universe.labels
        return [(labels[x], labels[y]) for x, y in self.pairs()]

    def matrix(self) -> list[list[bool]]:
        n = self.size
        return [[bool(row >> y & 1) for y in range(n)] for row in self.rows]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        x, y = pair
        return bool(self.rows[x] >> y & 1)

    def __len__(self):
        return sum(row.bit_count() for row in self.rows)

    def __le__(self, other: Relation) -> bool:
        return is_subrelation(self, other)

    def __or__(self, other: Relation) -> Relation:
        return union(self, other)

    def __and__(self, other: Relation) -> Relation:
        return intersect(self, other)

    def __str__(self):
        return "{" + ",".join(f"({a},{b})" for a, b in self.label_pairs()) + "}"


def identity_relation(u: Universe) -> Relation:
    return Relation(u, tuple(1 << x for x in range(u.size)))


def converse(r: Relation) -> Relation:
    cols = [0] * r.size
    for x, row in enumerate(r.rows):
        bit = 1 << x
        for y in iter_bits(row):
            cols[y] |= bit
    return Relation(r.universe, tuple(cols))


def compose(f: Relation, g: Relation) -> Relation:
    """``f o g``: pairs ``(x, y)`` with ``x g z`` and ``z f y`` for some ``z``."""
    u = _same_universe(f.universe, g.universe)
    frows = f.rows
    out = []
    for grow in g.rows:
        acc = 0
        for z in iter_bits(grow):
            acc |= frows[z]
        out.append(acc)
    return Relation(u, tuple(out))


def power(r: Relation, k: int) -> Relation:
    """``r**0`` is the identity and ``r**(k+1) = r**k o r``."""
    if k < 0:
        raise RelationError("relation power needs a nonnegative exponent")
    result = identity_relation(r.universe)
    for _ in range(k):
        result = compose(result, r)
    return result


def path_witness(r: Relation, k: int, x: int, y: int) -> list[int] | None:
    """Intermediate elements ``x1..x_{k-1}`` of a length-``k`` path from ``x`` to ``y``.

    Returns ``None`` when no such path exists.  Works by a layered reachability
    search with back-pointers, independent of :func:`power`.
    """
    if k < 1:
        raise RelationError("path length must be at least 1")
    u = r.universe
    u.check_index(x)
    u.check_index(y)
    rows = r.rows
    # layers[i] = elements reachable from x in exactly i steps
    layers = [1 << x]
    for _ in range(k):
        nxt = 0
        for z in iter_bits(layers[-1]):
            nxt |= rows[z]
        layers.append(nxt)
    if not layers[k] >> y & 1:
        return None
    path = []
    current = y
    for i in range(k - 1, 0, -1):
        # any element at depth i that steps to current
        cand = layers[i]
        for z in iter_bits(cand):
            if rows[z] >> current & 1:
                current = z
                break
        path.append(current)
    path.reverse()
    return path


def union(a: Relation, b: Relation) -> Relation:
    u = _same_universe(a.universe, b.universe)
    return Relation(u, tuple(p | q for p, q in zip(a.rows, b.rows)))


def intersect(a: Relation, b: Relation) -> Relation:
    u = _same_universe(a.universe, b.universe)
    return Relation(u, tuple(p & q for p, q in zip(a.rows, b.rows)))


def complement(a: Relation) -> Relation:
    full = a.universe.full_mask
    return Relation(a.universe, tuple(full & ~row for row in a.rows))


def is_subrelation(a: Relation, b: Relation) -> bool:
    _same_universe(a.universe, b.universe)
    return all(p & ~q == 0 for p, q in zip(a.rows, b.rows))


def is_reflexive(r: Relation) -> bool:
    return all(row >> x & 1 for x, row in enumerate(r.rows))


def is_symmetric(r: Relation) -> bool:
    rows = r.rows
    for x, row in enumerate(rows):
        for y in iter_bits(row):
            if not rows[y] >> x & 1:
                return False
    return True


def is_transitive(r: Relation) -> bool:
    rows = r.rows
    for row in rows:
        for y in iter_bits(row):
            if rows[y] & ~row:
                return False
    return True


def is_serial(r: Relation) -> bool:
    return all(r.rows)


def is_equivalence(r: Relation) -> bool:
    return is_reflexive(r) and is_symmetric(r) and is_transitive(r)


def successor(r: Relation, x: int) -> Subset:
    if not 0 <= x < len(r.rows):
        r.universe.check_index(x)
    return Subset(r.universe, r.rows[x])


def predecessor(r: Relation, x: int) -> Subset:
    r.universe.check_index(x)
    mask = 0
    for y, row in enumerate(r.rows):
        if row >> x & 1:
            mask |= 1 << y
    return Subset(r.universe, mask)

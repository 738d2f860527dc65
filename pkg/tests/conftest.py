"""Shared fixtures plus a set-of-pairs reference model.

The reference model works on plain Python ``set``s of 0-based index pairs and
deliberately shares no code with the bitset implementation, so it can act as
an oracle for it.
"""

from itertools import chain, combinations

import pytest
from hypothesis import strategies as st

from roughrel import Relation, Subset, Universe
from roughrel.oracle import universe_of


def rel(n, pairs):
    """Relation on ``{1..n}`` from 1-based label pairs."""
    return Relation.from_pairs(Universe.of_size(n), pairs)


def sub(n, labels):
    return Subset.from_labels(Universe.of_size(n), labels)


# --- reference model --------------------------------------------------------------


def ref_pairs(r):
    return {(x, y) for x in range(r.size) for y in range(r.size) if r.matrix()[x][y]}


def ref_compose(f, g):
    return {(x, y) for (x, z) in g for (z2, y) in f if z == z2}


def ref_transitive(pairs):
    out = set(pairs)
    while True:
        extra = ref_compose(out, out) - out
        if not extra:
            return out
        out |= extra


def ref_equivalence(pairs, n):
    sym = set(pairs) | {(y, x) for x, y in pairs}
    return ref_transitive(sym) | {(x, x) for x in range(n)}


def ref_lower(pairs, xs, n):
    return {x for x in range(n) if all(y in xs for (a, y) in pairs if a == x)}


def ref_upper(pairs, xs, n):
    return {x for x in range(n) if any(y in xs for (a, y) in pairs if a == x)}


def ref_powerset(n):
    items = range(n)
    return [set(c) for c in chain.from_iterable(combinations(items, k) for k in range(n + 1))]


def ref_definable(pairs, n):
    """Definable family as a set of frozensets, straight from the definitions."""
    out = set()
    for xs in ref_powerset(n):
        if ref_lower(pairs, xs, n) == xs and ref_upper(pairs, xs, n) == xs:
            out.add(frozenset(xs))
    return out


def family_sets(fam):
    return {frozenset(s) for s in fam}


def to_rel(n, pairs):
    return Relation.from_index_pairs(universe_of(n), pairs)


# --- hypothesis strategies --------------------------------------------------------------


def relations(min_n=1, max_n=6):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(0, (1 << (n * n)) - 1).map(
            lambda c: Relation.from_code(universe_of(n), c)
        )
    )


def relation_pairs(min_n=1, max_n=6):
    def both(n):
        codes = st.integers(0, (1 << (n * n)) - 1)
        return st.tuples(codes, codes).map(
            lambda cs: (Relation.from_code(universe_of(n), cs[0]), Relation.from_code(universe_of(n), cs[1]))
        )

    return st.integers(min_n, max_n).flatmap(both)


def relation_with_subset(min_n=1, max_n=8):
    def make(n):
        return st.tuples(
            st.integers(0, (1 << (n * n)) - 1), st.integers(0, (1 << n) - 1)
        ).map(lambda t: (Relation.from_code(universe_of(n), t[0]), Subset(universe_of(n), t[1])))

    return st.integers(min_n, max_n).flatmap(make)


@pytest.fixture
def edge_and_loop():
    """U={1,2,3}, R={(1,2),(3,3)}: non-serial, ts(R) serial."""
    return rel(3, [(1, 2), (3, 3)])


@pytest.fixture
def branching_path():
    return rel(4, [(1, 2), (2, 3), (1, 4)])


@pytest.fixture
def inward_tail():
    return rel(3, [(1, 1), (1, 2), (2, 1), (3, 2)])


@pytest.fixture
def three_chain():
    return rel(3, [(1, 2), (3, 1)])


# --- acceptance verdict lines ------------------------------------------------------

CRITERIA_RESULTS: list[str] = []


@pytest.fixture
def criterion():
    """Call as ``criterion(label, ok, detail)``; prints and records one verdict line."""

    def record(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {label}" + (f": {detail.strip()}" if detail.strip() else "")
        print(line)
        CRITERIA_RESULTS.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_RESULTS:
            terminalreporter.write_line(line)

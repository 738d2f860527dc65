from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roughrel import (
    Relation,
    RelationError,
    Subset,
    Universe,
    UniverseMismatchError,
    complement,
    compose,
    converse,
    identity_relation,
    intersect,
    is_equivalence,
    is_reflexive,
    is_serial,
    is_subrelation,
    is_symmetric,
    is_transitive,
    path_witness,
    power,
    predecessor,
    successor,
    union,
)
from roughrel.closures import rst_closure, equivalence_closure
from roughrel.oracle import enumerate_relations, random_relation, universe_of

from conftest import ref_compose, ref_pairs, rel, relation_pairs, relations, sub


class TestUniverse:
    def test_empty_rejected(self):
        with pytest.raises(RelationError):
            Universe(())
        with pytest.raises(RelationError):
            Universe.of_size(0)

    def test_duplicate_labels_rejected(self):
        with pytest.raises(RelationError, match="duplicate"):
            Universe(("a", "b", "a"))

    def test_index_and_labels(self):
        u = Universe(("x", "y", "z"))
        assert u.size == 3
        assert u.index("z") == 2
        assert "y" in u and "w" not in u
        with pytest.raises(RelationError):
            u.index("w")

    def test_equality_is_by_labels(self):
        assert Universe.of_size(3) == Universe(("1", "2", "3"))
        assert Universe(("1", "2")) != Universe(("2", "1"))


class TestSubset:
    def test_bits_outside_universe_rejected(self):
        with pytest.raises(RelationError):
            Subset(Universe.of_size(2), 0b100)

    def test_set_algebra(self):
        a, b = sub(4, [1, 2]), sub(4, [2, 3])
        assert (a | b).labels() == ["1", "2", "3"]
        assert (a & b).labels() == ["2"]
        assert (a - b).labels() == ["1"]
        assert (~a).labels() == ["3", "4"]
        assert sub(4, [2]) <= a and not a <= b

    def test_cross_universe_rejected(self):
        with pytest.raises(UniverseMismatchError):
            sub(3, [1]) | sub(4, [1])


class TestRelation:
    def test_wrong_shape_rejected(self):
        u = Universe.of_size(2)
        with pytest.raises(RelationError):
            Relation(u, (0,))
        with pytest.raises(RelationError):
            Relation(u, (0, 0b100))

    def test_code_roundtrip(self):
        for r in enumerate_relations(2):
            assert Relation.from_code(r.universe, r.code) == r

    def test_matrix_roundtrip(self):
        r = rel(3, [(1, 2), (3, 1)])
        assert Relation.from_matrix(r.universe, r.matrix()) == r


def test_identity_relation():
    assert identity_relation(Universe.of_size(3)) == rel(3, [(1, 1), (2, 2), (3, 3)])
    assert identity_relation(Universe.of_size(1)).pairs() == [(0, 0)]


@settings(max_examples=200)
@given(relations(1, 6))
def test_identity_is_neutral_for_compose(r):
    i = identity_relation(r.universe)
    assert compose(i, r) == r
    assert compose(r, i) == r


def test_converse_example():
    assert converse(rel(3, [(1, 2), (3, 1)])) == rel(3, [(2, 1), (1, 3)])


@settings(max_examples=300)
@given(relations(1, 8))
def test_converse_involution_and_symmetry(r):
    assert converse(converse(r)) == r
    assert is_symmetric(r) == (converse(r) == r)


def test_compose_order():
    f = rel(3, [(2, 3)])
    g = rel(3, [(1, 2)])
    # g first, then f
    assert compose(f, g) == rel(3, [(1, 3)])
    assert compose(g, f) == Relation.empty(f.universe)


def test_compose_universe_mismatch():
    with pytest.raises(UniverseMismatchError):
        compose(rel(2, []), rel(3, []))


def test_compose_associative_exhaustive_n2():
    rels = list(enumerate_relations(2))
    for a, b, c in product(rels, repeat=3):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=200)
@given(relation_pairs(1, 6))
def test_compose_matches_reference(pair):
    f, g = pair
    assert set(compose(f, g).pairs()) == ref_compose(ref_pairs(f), ref_pairs(g))


def test_power_examples():
    r = rel(3, [(1, 2), (2, 3)])
    assert power(r, 0) == identity_relation(r.universe)
    assert power(r, 1) == r
    assert power(r, 2) == rel(3, [(1, 3)])
    with pytest.raises(RelationError):
        power(r, -1)


@settings(max_examples=150)
@given(relations(1, 5), st.integers(0, 3), st.integers(0, 3))
def test_power_additive(r, j, k):
    assert power(r, j + k) == compose(power(r, j), power(r, k))


def _paths_brute(r, k, x, y):
    """All length-k walks by enumeration of intermediate tuples."""
    n = r.size
    for mids in product(range(n), repeat=k - 1):
        chain = [x, *mids, y]
        if all((a, b) in r for a, b in zip(chain, chain[1:])):
            return True
    return False


def test_path_witness_examples():
    r = rel(3, [(1, 2), (2, 3)])
    assert path_witness(r, 2, 0, 2) == [1]
    assert path_witness(rel(3, [(1, 2)]), 2, 0, 1) is None
    assert path_witness(r, 1, 0, 1) == []
    with pytest.raises(RelationError):
        path_witness(r, 0, 0, 0)


def test_path_witness_agrees_with_power_exhaustive_n3():
    for r in enumerate_relations(3):
        for k in range(1, 5):
            pk = power(r, k)
            for x, y in product(range(3), repeat=2):
                w = path_witness(r, k, x, y)
                assert (w is not None) == ((x, y) in pk)
                if w is not None:
                    chain = [x, *w, y]
                    assert all((a, b) in r for a, b in zip(chain, chain[1:]))


@settings(max_examples=100)
@given(relations(1, 5), st.integers(1, 5), st.data())
def test_path_witness_vs_walk_enumeration(r, k, data):
    x = data.draw(st.integers(0, r.size - 1))
    y = data.draw(st.integers(0, r.size - 1))
    assert (path_witness(r, k, x, y) is not None) == _paths_brute(r, k, x, y)
    assert ((x, y) in power(r, k)) == _paths_brute(r, k, x, y)


def test_set_algebra_on_relations():
    a, b = rel(3, [(1, 2)]), rel(3, [(2, 1)])
    assert union(a, b) == rel(3, [(1, 2), (2, 1)])
    assert intersect(a, b) == Relation.empty(a.universe)
    assert complement(Relation.empty(a.universe)) == Relation.full(a.universe)
    with pytest.raises(UniverseMismatchError):
        union(a, rel(2, []))


@settings(max_examples=200)
@given(relation_pairs(1, 6))
def test_relation_lattice_laws(pair):
    r, s = pair
    assert is_subrelation(r, union(r, s))
    assert is_subrelation(intersect(r, s), r)
    assert complement(complement(r)) == r


def test_predicates_on_identity():
    i = identity_relation(Universe.of_size(4))
    assert is_reflexive(i) and is_symmetric(i) and is_transitive(i) and is_serial(i)
    assert is_equivalence(i)


def test_seriality_examples(edge_and_loop, three_chain):
    assert not is_serial(edge_and_loop)
    assert not is_serial(three_chain)
    assert is_transitive(edge_and_loop)


def test_equivalence_examples(branching_path):
    assert not is_equivalence(rst_closure(branching_path))
    assert is_equivalence(equivalence_closure(branching_path))


@settings(max_examples=200)
@given(relations(1, 5))
def test_predicates_match_definitions(r):
    p = ref_pairs(r)
    n = r.size
    assert is_reflexive(r) == all((x, x) in p for x in range(n))
    assert is_symmetric(r) == all((y, x) in p for x, y in p)
    assert is_transitive(r) == all((x, z) in p for x, y in p for y2, z in p if y == y2)
    assert is_serial(r) == all(any((x, y) in p for y in range(n)) for x in range(n))


def test_neighbourhoods(inward_tail):
    assert successor(inward_tail, 0).labels() == ["1", "2"]
    assert predecessor(inward_tail, 1).labels() == ["1", "3"]
    e = Relation.empty(Universe.of_size(3))
    assert not successor(e, 2) and not predecessor(e, 2)
    with pytest.raises(RelationError):
        successor(e, 3)
    with pytest.raises(RelationError):
        predecessor(e, -1)


@settings(max_examples=200)
@given(relations(1, 8))
def test_successor_predecessor_duality(r):
    for x, y in product(range(r.size), repeat=2):
        assert (y in successor(r, x)) == (x in predecessor(r, y))


@settings(max_examples=200)
@given(relations(1, 7), st.floats(0, 1), st.integers(0, 2**32))
def test_neighbourhood_monotone(r, density, seed):
    bigger = union(r, random_relation(r.size, density, seed))
    for x in range(r.size):
        assert successor(r, x) <= successor(bigger, x)
        assert predecessor(r, x) <= predecessor(bigger, x)


def test_universe_of_is_cached():
    assert universe_of(5) is universe_of(5)

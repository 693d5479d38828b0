from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gnpforest.coding import (PrueferCode, all_labelled_trees, classic_prufer_edges, code_space_size,
                              count_trees_with_independent_set_degseq, decode_tree_with_independent_set,
                              encode_tree_with_independent_set, independent_prefix)
from gnpforest.errors import ConstraintError, ParameterError, StructureError
from gnpforest.graph import Graph
from gnpforest.harness.verify import degree_sequences


@pytest.mark.parametrize("n", range(2, 8))
def test_bijection_small(n):
    trees = list(all_labelled_trees(n))
    assert len(trees) == n ** (n - 2)
    for m in range(1, n):
        seen = set()
        for tree in trees:
            if not independent_prefix(tree, m):
                continue
            code = encode_tree_with_independent_set(tree, m)
            assert len(code.a) == m - 1 and len(code.b) == n - m - 1
            assert decode_tree_with_independent_set(code) == tree
            seen.add((code.a, code.b))
        assert len(seen) == code_space_size(n, m)


def test_every_code_decodes_to_valid_tree():
    n, m = 6, 3
    count = 0
    for a in product(range(m + 1, n + 1), repeat=m - 1):
        for b in product(range(1, n + 1), repeat=n - m - 1):
            tree = decode_tree_with_independent_set(PrueferCode(n, m, a, b))
            assert independent_prefix(tree, m)
            assert encode_tree_with_independent_set(tree, m) == PrueferCode(n, m, a, b)
            count += 1
    assert count == code_space_size(n, m)


def test_literal_pruning_counterexample_is_handled():
    # labels 1..4 on edges 1-2, 1-3, 2-4 with m = 1: the lone low label is
    # a leaf from the start and must not be pruned first
    tree = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
    code = encode_tree_with_independent_set(tree, 1)
    assert code.a == () and len(code.b) == 2
    assert decode_tree_with_independent_set(code) == tree


@settings(max_examples=80)
@given(st.integers(3, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))), st.data())
def test_roundtrip_random_trees(args, data):
    n, seq = args
    tree = Graph.from_edges(n, classic_prufer_edges(seq, n))
    m = data.draw(st.integers(1, n - 1))
    if independent_prefix(tree, m):
        assert decode_tree_with_independent_set(encode_tree_with_independent_set(tree, m)) == tree
    else:
        with pytest.raises(ConstraintError):
            encode_tree_with_independent_set(tree, m)


def test_encode_rejects_non_trees():
    with pytest.raises(StructureError):
        encode_tree_with_independent_set(Graph.cycle(4), 1)
    with pytest.raises(StructureError):
        encode_tree_with_independent_set(Graph.from_edges(4, [(0, 1), (2, 3), (1, 0)]), 1)
    with pytest.raises(StructureError):
        encode_tree_with_independent_set(Graph.empty(1), 1)


@pytest.mark.parametrize("n, m, a, b", [
    (1, 1, (), ()),
    (4, 0, (), (1, 1, 1)),
    (4, 4, (1, 1, 1), ()),
    (4, 2, (1,), (3,)),
    (4, 2, (3,), (5,)),
    (4, 2, (3, 3), ()),
])
def test_code_validation(n, m, a, b):
    with pytest.raises(ParameterError):
        PrueferCode(n, m, a, b)


@pytest.mark.parametrize("n", range(2, 9))
def test_degree_sequence_sum(n):
    for m in range(1, n):
        total = sum(count_trees_with_independent_set_degseq(n, m, d) for d in degree_sequences(n))
        assert total == code_space_size(n, m)


def test_degree_sequence_matches_enumeration():
    n = 6
    trees = list(all_labelled_trees(n))
    for m in range(1, n):
        for d in degree_sequences(n):
            want = sum(1 for t in trees if independent_prefix(t, m)
                       and [t.degree(v) for v in range(n)] == d)
            assert count_trees_with_independent_set_degseq(n, m, d) == want


def test_degree_sequence_edge_cases():
    assert count_trees_with_independent_set_degseq(4, 1, [1, 1, 1, 1]) == 0
    assert count_trees_with_independent_set_degseq(4, 2, [2, 2, 1, 1]) == 0
    with pytest.raises(ParameterError):
        count_trees_with_independent_set_degseq(3, 1, [0, 2, 2])
    with pytest.raises(ParameterError):
        count_trees_with_independent_set_degseq(3, 1, [1, 1])

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gnpforest.errors import ParameterError
from gnpforest.graph import (Graph, GnpParams, components, induced_subgraph, is_induced_forest,
                             read_graph, replace_vertex_neighborhood, sample_gnp, to_mask, write_graph)

graphs = st.integers(0, 10).flatmap(
    lambda n: st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))
                      .filter(lambda e: e[0] < e[1]), max_size=30)
    .map(lambda edges: Graph.from_edges(n, edges)))


def test_constructors():
    assert Graph.complete(4).num_edges == 6
    assert Graph.empty(3).num_edges == 0
    c = Graph.cycle(5)
    assert all(c.degree(v) == 2 for v in range(5))
    assert c.has_edge(0, 4) and not c.has_edge(0, 2)


def test_rejects_self_loop_and_asymmetry():
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ParameterError):
        Graph(2, (0b10, 0))


@given(graphs)
def test_text_roundtrip(g):
    assert Graph.from_text(g.to_text()) == g


@pytest.mark.parametrize("text", ["", "3 1\n", "3 1\n2 1\n", "3 2\n0 1\n0 1\n", "2 1\n0 5\n", "x y\n"])
def test_malformed_text(text):
    with pytest.raises(ParameterError):
        Graph.from_text(text)


def test_file_roundtrip(tmp_path):
    g = Graph.cycle(6)
    write_graph(g, tmp_path / "g.txt")
    assert read_graph(tmp_path / "g.txt") == g


def test_sampling_is_deterministic_and_seed_sensitive():
    a = sample_gnp(GnpParams(40, Fraction(1, 2), 7))
    b = sample_gnp(GnpParams(40, Fraction(1, 2), 7))
    c = sample_gnp(GnpParams(40, Fraction(1, 2), 8))
    assert a == b
    assert a != c


def test_sampling_prefix_consistency():
    # the coin for pair e does not depend on n beyond the pair order
    small = sample_gnp(GnpParams(5, Fraction(1, 3), 11))
    big = sample_gnp(GnpParams(9, Fraction(1, 3), 11))
    assert small.has_edge(0, 1) == big.has_edge(0, 1)
    assert small.has_edge(0, 4) == big.has_edge(0, 4)


def test_edge_density_close_to_p():
    g = sample_gnp(GnpParams(300, Fraction(3, 10), 1))
    pairs = 300 * 299 // 2
    assert abs(g.num_edges / pairs - 0.3) < 0.01


@pytest.mark.parametrize("p", [0, 1, Fraction(-1, 2), "2"])
def test_invalid_probability(p):
    with pytest.raises(ParameterError):
        GnpParams(5, p, 0)


def test_invalid_seed():
    with pytest.raises(ParameterError):
        GnpParams(5, Fraction(1, 2), 1 << 64)


def test_forest_checks():
    c = Graph.cycle(5)
    assert not is_induced_forest(c, range(5))
    assert is_induced_forest(c, [0, 1, 2, 3])
    assert is_induced_forest(c, [])
    assert not is_induced_forest(Graph.complete(3), [0, 1, 2])


def test_components_and_induced_subgraph():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (4, 5)])
    comps = components(g, to_mask(range(6), 6))
    assert sorted(c.bit_count() for c in comps) == [1, 2, 3]
    h = induced_subgraph(g, [1, 2, 4, 5])
    assert h.edges() == [(0, 1), (2, 3)]


@settings(max_examples=60)
@given(graphs, st.data())
def test_replace_neighborhood(g, data):
    if g.n == 0:
        return
    v = data.draw(st.integers(0, g.n - 1))
    nbrs = data.draw(st.sets(st.integers(0, g.n - 1).filter(lambda u: u != v)))
    h = replace_vertex_neighborhood(g, v, nbrs)
    assert set(h.neighbors(v)) == nbrs
    for a, b in g.edges():
        if v not in (a, b):
            assert h.has_edge(a, b)
    assert all(v in (a, b) or g.has_edge(a, b) for a, b in h.edges())


def test_replace_neighborhood_rejects_self():
    with pytest.raises(ParameterError):
        replace_vertex_neighborhood(Graph.empty(3), 1, [1])

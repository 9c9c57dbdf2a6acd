import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from zfip.graph import (Graph, GraphError, cartesian_product, edge_sum, encode_graph6, family, is_isomorphic,
                        parse_graph6, random_gnp, read_graph6_file, vertex_sum)

from conftest import FIXTURES


def test_basic_properties():
    g = Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert (g.n, g.m) == (4, 4)
    assert g.neighbors(2) == {0, 1, 3}
    assert g.degree(3) == 1 and g.max_degree() == 3
    assert g.arcs() == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1), (2, 3), (3, 2)]
    assert g.is_connected() and not g.is_tree()
    assert g.diameter() == 2


def test_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])


def test_graph6_known_strings():
    # reference strings from networkx's encoder
    assert encode_graph6(family("cycle", 5)) == "Dhc"
    assert encode_graph6(family("complete", 4)) == "C~"
    assert encode_graph6(Graph(0)) == "?"
    assert encode_graph6(Graph(1)) == "@"
    assert parse_graph6("A_") == family("complete", 2)
    assert parse_graph6("Bw") == family("complete", 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 20), st.floats(0, 1), st.integers(0, 10 ** 6))
def test_graph6_roundtrip_matches_networkx(n, p, seed):
    g = random_gnp(n, p, seed)
    text = encode_graph6(g)
    assert parse_graph6(text) == g
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(g.edges())
    assert nx.to_graph6_bytes(h, header=False).decode().strip() == text


def test_parse_rejects_garbage():
    with pytest.raises(GraphError):
        parse_graph6("D")
    with pytest.raises(GraphError):
        parse_graph6("Dh\x01")


def test_fixture_corpus_sizes():
    sizes = {n: len(read_graph6_file(FIXTURES / f"graphs_n{n}.g6")) for n in range(4, 8)}
    assert sizes == {4: 11, 5: 34, 6: 156, 7: 1044}
    trees = read_graph6_file(FIXTURES / "trees_n5_10.g6")
    assert all(t.is_tree() for t in trees)
    counts = {}
    for t in trees:
        counts[t.n] = counts.get(t.n, 0) + 1
    assert counts == {5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}


def test_families():
    assert family("path", 4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert family("star", 5).degree(0) == 4
    q3 = family("hypercube", 3)
    assert (q3.n, q3.m) == (8, 12)
    assert all(q3.degree(v) == 3 for v in range(8))
    assert is_isomorphic(q3, cartesian_product(family("hypercube", 2), family("path", 2)))
    with pytest.raises(GraphError):
        family("wheel", 5)


def test_sums():
    p2 = family("path", 2)
    assert is_isomorphic(vertex_sum(p2, 1, p2, 0), family("path", 3))
    assert is_isomorphic(edge_sum(p2, 1, p2, 0), family("path", 4))
    s = vertex_sum(family("star", 4), 0, family("star", 4), 0)
    assert is_isomorphic(s, family("star", 7))


def test_random_is_deterministic():
    assert random_gnp(10, 0.3, 5) == random_gnp(10, 0.3, 5)
    assert random_gnp(10, 0.3, 5) != random_gnp(10, 0.3, 6)


def test_isomorphism():
    a = Graph(4, [(0, 1), (1, 2), (2, 3)])
    b = Graph(4, [(2, 0), (0, 3), (3, 1)])
    assert is_isomorphic(a, b)
    assert not is_isomorphic(a, family("star", 4))

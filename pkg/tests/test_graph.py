import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wenger import graph as G
from wenger.construct import WengerParams, build_W
from wenger.graph import BipartiteGraph, GraphError, SimpleGraph


def W(q, m):
    return build_W(WengerParams.create(q, m))


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(map(tuple, g.edges()))
    return h


def cycle(n):
    return SimpleGraph.from_edges(n, np.arange(n), (np.arange(n) + 1) % n)


def test_degree_profile_examples():
    assert G.degree_profile(W(2, 1)) == (2, 2, True)
    assert G.degree_profile(SimpleGraph.from_edges(4, [], [])) == (0, 0, True)
    assert G.degree_profile(W(3, 2)) == (3, 3, True)
    path = SimpleGraph.from_edges(3, [0, 1], [1, 2])
    assert G.degree_profile(path) == (1, 2, False)


def test_components_examples():
    assert [len(c) for c in G.connected_components(W(2, 1))] == [8]
    assert [len(c) for c in G.connected_components(W(2, 2))] == [8, 8]
    comps = G.connected_components(W(2, 3))
    assert [len(c) for c in comps] == [8] * 4
    assert [int(c[0]) for c in comps] == sorted(int(c[0]) for c in comps)


@pytest.mark.parametrize("q, m, d", [(2, 1, 4), (3, 1, 4), (3, 2, 6)])
def test_diameter_examples(q, m, d):
    assert G.diameter(W(q, m)) == d


def test_girth_examples():
    assert G.girth(W(2, 1)) == 8
    assert G.girth(cycle(4)) == 4
    assert G.girth(W(3, 1)) == 6


def test_markers():
    assert G.diameter(W(2, 2)) == math.inf
    assert G.girth(SimpleGraph.from_edges(3, [0, 1], [1, 2])) == math.inf
    assert G.diameter(SimpleGraph.from_edges(0, [], [])) == 0


def test_odd_cycles_and_triangles():
    assert G.girth(cycle(5)) == 5
    assert G.girth(cycle(3)) == 3
    assert G.diameter(cycle(7)) == 3


def test_bipartite_invariants():
    g = W(3, 2)
    assert g.check_bipartite()
    assert g.n_edges == 3**4
    assert int(g.degrees().sum()) == 2 * g.n_edges
    for v in range(g.n):
        nb = g.neighbors(v)
        assert np.all(np.diff(nb) > 0)
        assert all(g.has_edge(int(u), v) for u in nb)


def test_bfs_layers_two_colour():
    g = W(3, 2)
    for src in (0, 5, g.n_points + 7):
        dist = G.bfs_distances(g.indptr, g.indices, src)
        side = np.arange(g.n) < g.n_points
        assert np.all((dist % 2 == 0) == (side == side[src]))


def test_export_examples():
    assert G.export(SimpleGraph.from_edges(2, [0], [1]), "edgelist") == b"0 1\n"
    assert G.export(W(2, 1), "edgelist").count(b"\n") == 8
    mm = G.export(W(3, 1), "matrixmarket").decode().splitlines()
    assert mm[0] == "%%MatrixMarket matrix coordinate pattern symmetric"
    assert mm[1] == "18 18 27"
    assert len(mm) == 2 + 27
    with pytest.raises(GraphError):
        G.export(W(2, 1), "graphml")


def test_export_golden_w12():
    # l2 + p2 = l1*p1 solved by hand; index p1 + 2*p2, lines offset by 4
    expected = b"0 4\n0 5\n1 4\n1 7\n2 6\n2 7\n3 5\n3 6\n"
    assert G.export(W(2, 1), "edgelist") == expected
    mm = G.export(W(2, 1), "matrixmarket").decode().splitlines()[2:]
    assert all(int(a) > int(b) for a, b in (ln.split() for ln in mm))


def test_export_sorted_and_roundtrip():
    g = W(3, 2)
    rows = [tuple(map(int, ln.split())) for ln in G.export(g, "edgelist").decode().splitlines()]
    assert rows == sorted(rows) and all(u < v for u, v in rows)
    assert G.read_edgelist(G.export(g, "edgelist"), g.n).same_edges(g)
    assert G.read_matrixmarket(G.export(g, "matrixmarket")).same_edges(g)


def test_export_is_deterministic():
    assert G.export(W(4, 2), "matrixmarket") == G.export(W(4, 2), "matrixmarket")


def test_matrixmarket_count_mismatch():
    bad = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n"
    with pytest.raises(GraphError):
        G.read_matrixmarket(bad)


def test_from_incidences_range_check():
    with pytest.raises(GraphError):
        BipartiteGraph.from_incidences(2, 2, [0, 2], [0, 1])


def test_biadjacency_matches_dense_block():
    g = W(3, 1)
    a = g.adjacency_matrix(np.int64)
    n = g.biadjacency().toarray()
    assert np.array_equal(a[: g.n_points, g.n_points :], n)
    assert not a[: g.n_points, : g.n_points].any()


def test_induced_subgraph_components():
    g = W(2, 3)
    for comp in G.connected_components(g):
        sub = G.induced_subgraph(g, comp)
        assert isinstance(sub, BipartiteGraph)
        assert (sub.n_points, sub.n_lines, sub.n_edges) == (4, 4, 8)
        assert sub.check_bipartite()
        assert nx.is_isomorphic(to_nx(sub), to_nx(W(2, 1)))


@pytest.mark.parametrize("q, m", [(2, 1), (3, 1), (3, 2), (4, 1), (2, 2), (5, 1)])
def test_metrics_match_networkx(q, m, backend):
    g = W(q, m)
    h = to_nx(g)
    comps = G.connected_components(g)
    assert sorted(map(len, comps)) == sorted(map(len, nx.connected_components(h)))
    if nx.is_connected(h):
        assert G.diameter(g) == nx.diameter(h)
    assert G.girth(g) == nx.girth(h)


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(1, 14),
    edges=st.lists(st.tuples(st.integers(0, 13), st.integers(0, 13)), max_size=30),
)
def test_random_graphs_match_networkx(n, edges):
    edges = [(u, v) for u, v in edges if u < n and v < n and u != v]
    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)
    g = SimpleGraph.from_edges(n, u, v)
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(edges)
    assert g.n_edges == h.number_of_edges()
    assert G.girth(g) == nx.girth(h)
    comps = G.connected_components(g)
    assert sorted(tuple(c.tolist()) for c in comps) == sorted(
        tuple(sorted(c)) for c in nx.connected_components(h)
    )
    if nx.is_connected(h):
        assert G.diameter(g) == nx.diameter(h)
    else:
        assert G.diameter(g) == math.inf
    ecc_a, best_a = G.all_sources_bfs.numba_impl(g.indptr, g.indices)
    ecc_b, best_b = G.all_sources_bfs.numpy_impl(g.indptr, g.indices)
    assert np.array_equal(ecc_a, ecc_b) and best_a == best_b

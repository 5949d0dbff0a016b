import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from locallab.errors import GraphError, NonTreeView
from locallab.families import complete, complete_bipartite, cycle, path, star
from locallab.graph import (
    Graph,
    bfs_distances,
    connected_components,
    distance_power_graph,
    girth,
    is_connected,
    khop_view,
    line_graph,
    shortest_path,
    subdivide_for_cds,
    two_coloring,
)
from locallab.graphio import format_graph, format_labels, parse_graph, read_graph, write_graph
from locallab.viewtree import ViewTree


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.nodes())
    h.add_edges_from(g.edges())
    return h


def test_graph_normalizes_adjacency():
    g = Graph(4, [(2, 0), (0, 1), (3, 0)])
    assert g.neighbors(0) == (1, 2, 3)
    assert g.neighbors(2) == (0,)
    assert list(g.edges()) == [(0, 1), (0, 2), (0, 3)]
    assert g.max_degree == 3


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(GraphError):
        Graph(3, edges)


@pytest.mark.parametrize(
    "g, expected",
    [
        (complete(3), 3),
        (complete_bipartite(2, 3), 4),
        (path(6), math.inf),
        (star(7), math.inf),
        (cycle(7), 7),
        (Graph(5, []), math.inf),
    ],
)
def test_girth_examples(g, expected):
    assert girth(g) == expected


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=11))
def test_girth_matches_networkx(g):
    ref = nx.girth(to_nx(g))
    assert girth(g) == ref


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_girth_invariant_under_relabeling(g, rnd):
    perm = list(g.nodes())
    rnd.shuffle(perm)
    assert girth(g.relabel(perm)) == girth(g)


def test_khop_view_star_center():
    v = khop_view(star(5), 0, 1)
    assert v == ViewTree(None, [(ViewTree(), 4)])


def test_khop_view_path_end_is_chain():
    v = khop_view(path(3), 0, 2)
    assert v == ViewTree(None, [ViewTree(None, [ViewTree()])])
    assert v.height == 2


def test_khop_view_triangle(triangle):
    assert khop_view(triangle, 0, 1) == ViewTree(None, [(ViewTree(), 2)])
    with pytest.raises(NonTreeView):
        khop_view(triangle, 0, 2)


def test_khop_view_k0_is_leaf(triangle):
    assert khop_view(triangle, 1, 0) == ViewTree()


@pytest.mark.parametrize("n", [5, 6, 9])
def test_khop_view_symmetric_nodes_agree(n):
    g = cycle(n)
    k = (n - 1) // 2
    views = {khop_view(g, v, k) for v in g.nodes()}
    assert len(views) == 1


def test_khop_view_labels_distinguish():
    g = Graph(3, [(0, 1), (1, 2)], labels=[0, 1, 2])
    assert khop_view(g, 1, 1) == khop_view(g.with_labels(None), 1, 1)
    assert khop_view(g, 0, 1, labeled=True) != khop_view(g, 2, 1, labeled=True)
    assert khop_view(g, 0, 1) == khop_view(g, 2, 1)


@pytest.mark.parametrize(
    "g, n, m",
    [(path(3), 2, 1), (star(4), 3, 3), (cycle(5), 5, 5)],
)
def test_line_graph_examples(g, n, m):
    lg, edges = line_graph(g)
    assert (lg.n, lg.m) == (n, m)
    assert len(edges) == g.m


def test_line_graph_of_cycle_is_cycle():
    lg, _ = line_graph(cycle(5))
    assert all(lg.degree(v) == 2 for v in lg.nodes())
    assert is_connected(lg)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_line_graph_degrees(g):
    lg, edges = line_graph(g)
    for idx, (u, v) in enumerate(edges):
        assert lg.degree(idx) == g.degree(u) + g.degree(v) - 2
    assert nx.is_isomorphic(to_nx(lg), nx.line_graph(to_nx(g)))


def test_subdivide_single_edge():
    h = subdivide_for_cds(path(2))
    assert (h.n, h.m) == (4, 3)
    assert not h.has_edge(0, 1)
    assert girth(h) == math.inf


def test_subdivide_triangle_is_nine_cycle(triangle):
    h = subdivide_for_cds(triangle)
    assert (h.n, h.m) == (9, 9)
    assert girth(h) == 9
    assert all(h.degree(v) == 2 for v in h.nodes())


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_subdivide_triples_girth(g):
    h = subdivide_for_cds(g)
    assert (h.n, h.m) == (g.n + 2 * g.m, 3 * g.m)
    assert all(not h.has_edge(u, v) for u, v in g.edges())
    gg = girth(g)
    assert girth(h) == (3 * gg if gg != math.inf else math.inf)


@pytest.mark.parametrize(
    "g, subset, d, m",
    [
        (path(3), [0, 1, 2], 2, 3),
        (path(4), [0, 3], 3, 1),
        (path(5), [0, 4], 3, 0),
    ],
)
def test_distance_power_examples(g, subset, d, m):
    h, members = distance_power_graph(g, subset, d)
    assert members == sorted(subset)
    assert h.n == len(subset) and h.m == m


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10), st.integers(1, 4))
def test_distance_power_matches_bfs(g, d):
    h, members = distance_power_graph(g, g.nodes(), d)
    for a, u in enumerate(members):
        dist = bfs_distances(g, u)
        for b, v in enumerate(members):
            if a != b:
                assert h.has_edge(a, b) == (v in dist and dist[v] <= d)


def test_shortest_path_is_lexicographically_smallest():
    g = cycle(4)
    assert shortest_path(g, 0, 2) == [0, 1, 2]
    assert shortest_path(Graph(3, [(0, 1)]), 0, 2) is None


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10))
def test_components_and_coloring(g):
    h = to_nx(g)
    assert sorted(map(sorted, connected_components(g))) == sorted(sorted(c) for c in nx.connected_components(h))
    col = two_coloring(g)
    assert (col is not None) == nx.is_bipartite(h)
    if col is not None:
        assert all(col[u] != col[v] for u, v in g.edges())


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=9))
def test_text_format_round_trip(g):
    g = g.with_labels([v % 3 for v in g.nodes()])
    text = format_graph(g)
    assert text.splitlines()[0] == f"{g.n} {g.m}"
    back = parse_graph(text, format_labels(g))
    assert back.adjacency == g.adjacency and back.labels == g.labels


@pytest.mark.parametrize("suffix", [".txt", ".json"])
def test_file_round_trip(tmp_path, suffix):
    g = cycle(6).with_labels([0, 1, 0, 1, 0, 1])
    p = tmp_path / f"g{suffix}"
    lab = tmp_path / "g.lab"
    write_graph(g, p, lab)
    back = read_graph(p, lab)
    assert back.adjacency == g.adjacency and back.labels == g.labels

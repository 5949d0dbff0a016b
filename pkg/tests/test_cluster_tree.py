import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locallab.errors import NonIntegralSizes
from locallab.families import path
from locallab.graph import girth, khop_view, two_coloring
from locallab.lowerbound import (
    Arc,
    build_cluster_tree,
    build_hk,
    delta_sequence,
    geometric_deltas,
    instantiate_naive,
    minimal_n0,
    node_count_bound,
    unroll_cluster_view,
)
from locallab.viewtree import ViewTree, leaf, views_equal


def test_delta_sequence_values():
    assert delta_sequence(4, 2) == (1, 4, 32, 512)
    seq = delta_sequence(4, 2)
    assert [b // a for a, b in zip(seq, seq[1:])] == [4, 8, 16]


@given(st.integers(1, 50), st.integers(0, 5))
def test_delta_sequence_ratio(delta, k):
    seq = delta_sequence(delta, k)
    assert seq[0] == 1 and len(seq) == k + 2
    assert all(seq[i + 1] == seq[i] * 2 ** i * delta for i in range(k + 1))


def test_ct1_structure():
    ct = build_cluster_tree(1, (1, 2, 4))
    assert len(ct.clusters) == 4
    assert ct.arcs == [Arc(0, 1, 0), Arc(0, 2, 1), Arc(1, 3, 0)]
    assert [ct.label(a) for a in ct.arcs] == [(1, 2), (2, 4), (1, 2)]


def test_ct2_depths_and_count():
    ct = build_cluster_tree(2, delta_sequence(4, 2))
    assert [c.depth for c in ct.clusters[:4]] == [3, 2, 1, 1]
    assert len(ct.clusters) == 10
    assert ct.clusters[0].depth == 3


@pytest.mark.parametrize("k, count", [(1, 4), (2, 10), (3, 32), (4, 130), (5, 652)])
def test_cluster_counts(k, count):
    ct = build_cluster_tree(k, geometric_deltas(k))
    assert len(ct.clusters) == count
    assert ct.clusters[0].depth == k + 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("formula", [True, False])
def test_arc_size_identity(k, formula):
    deltas = delta_sequence(4, k) if formula else geometric_deltas(k)
    ct = build_cluster_tree(k, deltas)
    for a in ct.arcs:
        d_c, d_d = ct.label(a)
        assert ct.clusters[a.parent].size * d_c == ct.clusters[a.child].size * d_d
        assert ct.clusters[a.parent].size >= d_d and ct.clusters[a.child].size >= d_c


@pytest.mark.parametrize("k, deltas", [(1, (1, 2, 4)), (2, (1, 2, 4, 8)), (2, (1, 2, 4, 6)), (3, (1, 2, 4, 8, 16))])
def test_minimal_n0_is_smallest(k, deltas):
    n0 = minimal_n0(k, deltas)
    instantiate_naive(build_cluster_tree(k, deltas, n0))
    for m in range(1, n0):
        with pytest.raises(NonIntegralSizes):
            instantiate_naive(build_cluster_tree(k, deltas, m))


@pytest.mark.parametrize("deltas", [(1, 1, 2), (2, 1, 4), (0, 1, 2), (1, 2)])
def test_bad_deltas(deltas):
    with pytest.raises(ValueError):
        build_cluster_tree(1, deltas)


def test_naive_k1_instance():
    ct = build_cluster_tree(1, (1, 2, 4), n0=8)
    assert ct.sizes == [8, 4, 4, 2]
    g = instantiate_naive(ct)
    assert g.n == 18
    assert girth(g) == 4
    assert two_coloring(g) is not None
    for a in ct.arcs:
        d_c, d_d = ct.label(a)
        for v in g.nodes():
            if g.label(v) == a.parent:
                assert sum(g.label(w) == a.child for w in g.neighbors(v)) == d_c
            if g.label(v) == a.child:
                assert sum(g.label(w) == a.parent for w in g.neighbors(v)) == d_d


@pytest.mark.parametrize("seed", [None, 1, 2])
def test_naive_degrees_k2(seed):
    ct = build_cluster_tree(2, geometric_deltas(2))
    g = instantiate_naive(ct, seed)
    assert g.n == ct.node_count
    for v in g.nodes():
        c = g.label(v)
        expect = {}
        for a in ct.arcs:
            if a.parent == c:
                expect[a.child] = ct.label(a)[0]
            if a.child == c:
                expect[a.parent] = ct.label(a)[1]
        got = {}
        for w in g.neighbors(v):
            got[g.label(w)] = got.get(g.label(w), 0) + 1
        assert got == expect


def test_naive_rejects_indivisible():
    with pytest.raises(NonIntegralSizes):
        build_cluster_tree(1, (1, 2, 4), n0=6)


def test_node_count_bound_ct2():
    ct = build_cluster_tree(2, delta_sequence(4, 2))
    assert ct.n0 == 8192
    assert ct.node_count == 12960
    assert ct.node_count <= node_count_bound(ct.n0, 4)


def test_hk_of_edge_is_square():
    h = build_hk(path(2))
    assert (h.n, h.m) == (4, 4)
    assert girth(h) == 4


def test_hk_degrees():
    g = instantiate_naive(build_cluster_tree(1, (1, 2, 4)))
    h = build_hk(g)
    assert h.n == 2 * g.n
    assert all(h.degree(v) == g.degree(v) + 1 == h.degree(v + g.n) for v in g.nodes())
    # the counterpart matching is a feasible matching of size n
    assert all(h.has_edge(v, v + g.n) for v in g.nodes())


def test_unroll_depth0_is_leaf():
    ct = build_cluster_tree(1, (1, 2, 4))
    assert unroll_cluster_view(ct, 0, None, 0) == leaf()


def test_unroll_k1_multiplicities():
    ct = build_cluster_tree(1, (1, 2, 4))
    v0 = unroll_cluster_view(ct, 0, None, 1, labeled=True)
    v1 = unroll_cluster_view(ct, 1, None, 1, labeled=True)
    assert v0 == ViewTree(0, [(leaf(1), 1), (leaf(2), 2)])
    assert v1 == ViewTree(1, [(leaf(3), 1), (leaf(0), 2)])


def test_unroll_entry_removes_one_parent_edge():
    ct = build_cluster_tree(1, (1, 2, 4))
    v = unroll_cluster_view(ct, 2, 0, 1, labeled=True)
    assert v == ViewTree(2, [(leaf(0), 3)])


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("formula", [True, False])
def test_adjacent_root_views_k_equal(k, formula):
    deltas = delta_sequence(4, k) if formula else geometric_deltas(k)
    ct = build_cluster_tree(k, deltas)
    cg = ct.cluster_graph()
    a = unroll_cluster_view(cg, 0, None, k)
    b = unroll_cluster_view(cg, 1, None, k)
    assert views_equal(a, b, k)
    # one more hop tells the clusters apart
    assert not views_equal(unroll_cluster_view(cg, 0, None, k + 1), unroll_cluster_view(cg, 1, None, k + 1), k + 1)
    h = cg.doubled()
    n = len(ct.clusters)
    views = [unroll_cluster_view(h, s, None, k) for s in (0, 1, n, n + 1)]
    assert all(views_equal(x, y, k) for x in views for y in views)


def test_node_views_match_cluster_unrolling_k1():
    ct = build_cluster_tree(1, (1, 2, 4))
    g = instantiate_naive(ct, seed=3)
    cg = ct.cluster_graph()
    for v in g.nodes():
        want = unroll_cluster_view(cg, g.label(v), None, 1, labeled=True)
        assert khop_view(g, v, 1, labeled=True) == want

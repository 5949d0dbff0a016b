from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from locallab.families import complete_bipartite, k_m_sqrt_m, path, star
from locallab.graph import Graph, is_vertex_cover
from locallab.lp.model import vertex_cover_lp
from locallab.mvc import alpha, joins, mvc_fmm, mvc_fmm_reference, within_alpha, within_lemma16
from locallab.oracles.exact import exact_lp, exact_solve


@pytest.mark.parametrize(
    "d, dmax, ell, expected",
    [
        (0, 0, 0, False),
        (1, 0, 0, True),
        (1, 5, 0, True),
        (2, 4, 1, True),
        (1, 4, 1, False),
        (3, 8, 2, False),
        (4, 8, 2, True),
    ],
)
def test_join_threshold(d, dmax, ell, expected):
    assert joins(d, dmax, ell) is expected


def test_exact_bound_helpers():
    assert within_alpha(Fraction(5), 4, 2)
    assert not within_alpha(Fraction(5) + Fraction(1, 10**9), 4, 2)
    assert within_lemma16(4, 16, 0, 2) and not within_lemma16(5, 16, 0, 2)
    assert alpha(16, 2) == 7.0


def test_single_edge():
    res = mvc_fmm(path(2), 1)
    assert res.cover == [0, 1]
    assert res.dual_value == 1
    assert Fraction(len(res.cover)) / res.dual_value == 2 <= alpha(1, 1)


@pytest.mark.parametrize("n", [3, 5, 9])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_star_picks_center(n, k):
    res = mvc_fmm(star(n), k)
    assert res.cover == [0]
    assert res.dual_value == 1


@pytest.mark.parametrize("n", [3, 9])
def test_star_single_iteration_takes_everyone(n):
    # with one iteration the threshold exponent is 0, so every non-isolated node joins
    res = mvc_fmm(star(n), 1)
    assert res.cover == list(range(n))
    assert within_alpha(Fraction(n) / res.dual_value, n - 1, 1)


def test_kmm_ratio_five():
    g = k_m_sqrt_m(16)
    res = mvc_fmm(g, 2)
    assert len(res.cover) == 20
    tau = exact_solve("MVC", g).value
    assert tau == 4
    assert Fraction(len(res.cover), tau) == 5


def test_rounds_and_telemetry():
    res = mvc_fmm(complete_bipartite(3, 3), 3)
    assert res.rounds == 3 * 3 + 1
    assert all(len(d) == 3 for d in res.dynamic_degrees)
    assert res.assertion_log == []


def test_rejects_k0():
    with pytest.raises(ValueError):
        mvc_fmm(path(3), 0)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=12), st.integers(1, 4))
def test_invariants_and_sandwich(g, k):
    res = mvc_fmm(g, k)
    assert is_vertex_cover(g, res.cover)
    load = [Fraction(0)] * g.n
    for (u, v), y in res.edge_duals.items():
        assert y >= 0
        load[u] += y
        load[v] += y
    assert all(x <= 1 for x in load)
    assert all(within_alpha(Y, g.max_degree, k) for Y in res.dual_sums)
    if g.m:
        nu_f = exact_lp(vertex_cover_lp(g)).value
        tau = exact_solve("MVC", g).value
        assert res.dual_value <= nu_f <= tau <= len(res.cover)
        assert within_alpha(Fraction(len(res.cover), tau), g.max_degree, k)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=12), st.integers(1, 4))
def test_protocol_matches_reference(g, k):
    res = mvc_fmm(g, k)
    cover, duals = mvc_fmm_reference(g, k)
    assert res.cover == cover
    assert res.edge_duals == duals


@pytest.mark.parametrize("workers", [1, 3])
def test_deterministic_across_workers(workers):
    g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (0, 4), (2, 6)])
    a = mvc_fmm(g, 2)
    b = mvc_fmm(g, 2, workers=workers, seed=11)
    assert a.cover == b.cover and a.edge_duals == b.edge_duals

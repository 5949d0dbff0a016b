import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from locallab.errors import InvalidCoefficients
from locallab.families import complete, cycle, path, star
from locallab.graph import Graph, is_dominating_set
from locallab.lp import (
    CanonicalLP,
    check_decomposition,
    dominating_set_lp,
    ls_decompose,
    ls_decompose_many,
    mds_pipeline,
    random_covering_lp,
    round_covering,
    round_packing,
    selection_bound,
    solve_lp_local,
    theorem_params,
    vertex_cover_lp,
)
from locallab.lp.decomposition import draw_radii
from locallab.oracles.exact import exact_lp


# ------------------------------------------------------------ decomposition

def test_single_node_selects_itself():
    for seed in range(20):
        dec = ls_decompose(Graph(1, []), 0.5, 3, seed)
        if dec.radii[0] > 0:
            assert dec.selected == [0] and dec.leader[0] == 0


def test_edgeless_graph_singleton_clusters():
    dec = ls_decompose(Graph(6, []), 0.7, 2, seed=1)
    assert all(dec.leader[u] == u for u in dec.selected)
    assert set(dec.selected) == {u for u in range(6) if dec.radii[u] > 0}


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=12), st.floats(0.05, 0.95), st.integers(1, 4), st.integers(0, 10**6))
def test_properties_one_and_two(g, p, R, seed):
    decs, rounds = ls_decompose_many(g, p, R, 3, seed)
    assert rounds == R
    for dec in decs:
        assert check_decomposition(g, dec) == []
        for u in dec.selected:
            # selected nodes sit strictly inside the leader's ball
            assert dec.leader[u] >= u or dec.radii[dec.leader[u]] > 0


def test_radii_are_truncated_geometric():
    rng = np.random.default_rng(0)
    r = np.array(draw_radii(rng, 0.5, 3, 20000))
    assert r.min() >= 0 and r.max() <= 3
    # P[r = 3] = p^3
    assert abs((r == 3).mean() - 0.125) < 0.01


def test_selection_probability_path10():
    n, p, R, trials = 10, 0.5, 3, 2000
    decs, _ = ls_decompose_many(path(n), p, R, trials, seed=5)
    hits = np.zeros(n)
    for dec in decs:
        hits[dec.selected] += 1
    bound = selection_bound(p, R, n)
    sigma = math.sqrt(bound * (1 - bound) / trials)
    assert (hits / trials >= bound - 3 * sigma).all()


@pytest.mark.parametrize("p, R", [(0.0, 2), (1.0, 2), (0.5, 0)])
def test_ls_rejects_bad_parameters(p, R):
    with pytest.raises(ValueError):
        ls_decompose(path(3), p, R)


# ------------------------------------------------------------------ solver

def test_theorem_params():
    prm = theorem_params(40)
    assert prm.p == pytest.approx(40 ** -0.5)
    assert prm.q == pytest.approx(prm.p * (1 - 40 * prm.p ** 4))
    assert prm.ell == math.ceil(4 * math.log(40) / (0.25 * prm.q))
    assert prm.ratio_bound == pytest.approx(2 / prm.q)
    tiny = theorem_params(1)
    assert tiny.ell == 1 and tiny.p == 0.5


def test_single_row_solved_exactly():
    lp = CanonicalLP.build([2, 3, 5], [4], [(0, 0, 1), (0, 1, 2), (0, 2, 1)])
    opt = exact_lp(lp).value
    full = 0
    for seed in range(20):
        res = solve_lp_local(lp, 3, 0.9, 2, seed)
        assert res.primal_value == opt
        if res.coverage == [3]:
            full += 1
            assert res.dual_value == opt and res.ratio == 1
    assert full > 0


def test_division_guard_with_empty_selection():
    lp = vertex_cover_lp(cycle(6))
    # p tiny: no row gets a positive radius, so every row needs the guard
    res = solve_lp_local(lp, 1, 1e-9, 2, seed=0)
    assert res.guarded_rows == list(range(6))
    assert lp.primal_feasible(res.x) and lp.dual_feasible(res.y)
    assert res.dual_value == 0


def test_c6_relaxation_theorem_parameters():
    lp = vertex_cover_lp(cycle(6))
    prm = theorem_params(lp.n_dual)
    assert exact_lp(lp).value == 3
    cache = {}
    for seed in range(5):
        res = solve_lp_local(lp, prm.ell, prm.p, prm.R, seed, cache=cache)
        assert lp.primal_feasible(res.x) and lp.dual_feasible(res.y)
        assert res.dual_value <= 3 <= res.primal_value
        assert float(res.ratio) <= prm.ratio_bound


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 10**6), st.integers(1, 6))
def test_outputs_always_feasible(n_p, n_d, seed, ell):
    lp = random_covering_lp(n_p, n_d, 0.3, seed)
    res = solve_lp_local(lp, ell, 0.5, 2, seed)
    assert lp.primal_feasible(res.x)
    assert lp.dual_feasible(res.y)
    opt = exact_lp(lp).value
    assert res.dual_value <= opt <= res.primal_value


def test_workers_and_cache_do_not_change_result():
    lp = random_covering_lp(12, 12, 0.25, seed=3)
    a = solve_lp_local(lp, 8, 0.5, 3, seed=7)
    b = solve_lp_local(lp, 8, 0.5, 3, seed=7, cache={}, workers=3)
    assert a.x == b.x and a.y == b.y


def test_rejects_zero_instances():
    with pytest.raises(ValueError):
        solve_lp_local(vertex_cover_lp(path(3)), 0, 0.5, 2)


# ---------------------------------------------------------------- rounding

def test_round_covering_integral_input_unchanged():
    lp = dominating_set_lp(path(4))
    x = [0, 1, 1, 0]
    assert round_covering(lp, x, seed=3) == x


def test_round_covering_repair_picks_cheapest():
    lp = CanonicalLP.build([3, 1, 2], [1], [(0, 0, 1), (0, 1, 1), (0, 2, 1)])
    assert round_covering(lp, [0, 0, 0]) == [0, 1, 0]


def test_round_covering_star_center():
    g = star(9)
    lp = dominating_set_lp(g)
    x = exact_lp(lp).witness
    assert x[0] == 1 and sum(x) == 1
    for seed in range(50):
        out = round_covering(lp, x, seed=seed)
        assert out[0] == 1 and sum(out) == 1


def test_rounding_requires_zero_one():
    lp = CanonicalLP.build([1], [1], [(0, 0, 2)])
    with pytest.raises(InvalidCoefficients):
        round_covering(lp, [1])
    with pytest.raises(InvalidCoefficients):
        round_packing(lp, [0])


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=10), st.integers(0, 10**6))
def test_round_covering_feasible(g, seed):
    lp = dominating_set_lp(g)
    x = exact_lp(lp).witness
    out = round_covering(lp, x, seed=seed)
    assert all(isinstance(v, int) and v >= 0 for v in out)
    assert lp.primal_feasible(out)


def test_round_packing_integral_unchanged():
    lp = vertex_cover_lp(path(4))
    assert round_packing(lp, [1, 0, 1], seed=2) == [1, 0, 1]


def test_round_packing_single_variable_probability():
    lp = CanonicalLP.build([1], [1], [(0, 0, 1)])
    trials = 4000
    ones = sum(round_packing(lp, [Fraction(3, 10)], seed=s)[0] for s in range(trials))
    prob = 1 / (2 * math.e)
    sigma = math.sqrt(prob * (1 - prob) / trials)
    assert abs(ones / trials - prob) < 3 * sigma


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=10), st.integers(0, 10**6))
def test_round_packing_feasible(g, seed):
    if g.m == 0:
        return
    lp = vertex_cover_lp(g)
    y = exact_lp(lp).extra["y"]
    out = round_packing(lp, y, seed=seed)
    assert lp.dual_feasible(out)


# --------------------------------------------------------------------- mds

@pytest.mark.parametrize("g", [complete(5), star(9), cycle(7), path(2), Graph(3, [])])
def test_mds_pipeline_valid(g):
    prm = theorem_params(g.n)
    for seed in range(3):
        d = mds_pipeline(g, prm.ell, prm.p, prm.R, seed=seed)
        assert len(d) >= 1 and is_dominating_set(g, d)


def test_mds_star_is_center():
    prm = theorem_params(9)
    assert mds_pipeline(star(9), prm.ell, prm.p, prm.R, seed=0) == [0]

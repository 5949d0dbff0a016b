"""Dominating set via the local LP solver followed by covering rounding."""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import Graph, is_dominating_set
from ..errors import InvariantViolation
from .model import dominating_set_lp
from .rounding import DEFAULT_LAMBDA, round_covering
from .solver import LocalLPResult, solve_lp_local


@dataclass
class MdsResult:
    nodes: list[int]
    lp: LocalLPResult


def mds_run(g: Graph, ell: int, p: float, R: int, lam: float = DEFAULT_LAMBDA, seed: int = 0,
            cache=None) -> MdsResult:
    if g.n == 0:
        raise ValueError("graph has no nodes")
    lp = dominating_set_lp(g)
    frac = solve_lp_local(lp, ell, p, R, seed, cache=cache)
    x = round_covering(lp, frac.x, lam, seed)
    nodes = [v for v, xv in enumerate(x) if xv > 0]
    if not is_dominating_set(g, nodes):
        raise InvariantViolation("rounded solution does not dominate")
    return MdsResult(nodes, frac)


def mds_pipeline(g: Graph, ell: int, p: float, R: int, lam: float = DEFAULT_LAMBDA, seed: int = 0) -> list[int]:
    """A dominating set of ``g`` (sorted node list)."""
    return mds_run(g, ell, p, R, lam, seed).nodes

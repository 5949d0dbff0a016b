"""Distributed approximation of covering/packing LP pairs by local sub-LPs.

``ell`` independent LS(p, R) decompositions run on the conflict graph of the
constraints (rows at network distance <= 4). Each cluster of selected rows
is solved exactly as a sub-LP, the per-instance solutions are summed, the
packing solution is averaged and every covering variable is divided by the
smallest coverage ratio ``(Ax)_j / b_j`` among its rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import InfeasibleSubLP, InvariantViolation, LPInfeasible, LPUnbounded
from ..oracles.simplex import solve_packing
from .decomposition import ls_decompose_many
from .model import CanonicalLP, build_lp_network


@dataclass
class LPParams:
    """Parameter choice ``p = n_d**(-alpha/R)``, ``ell >= 2(1+beta) ln(n_d) / (eps**2 q)``."""

    p: float
    R: int
    ell: int
    q: float
    eps: float

    @property
    def ratio_bound(self) -> float:
        return 1.0 / (self.q * (1 - self.eps))


def theorem_params(n_dual: int, alpha: float = 2.0, beta: float = 1.0, eps: float = 0.5,
                   R: int = 4) -> LPParams:
    if n_dual < 2:
        # ln(1) = 0 would allow ell = 0; one instance with p close to 1/2 is the useful limit
        return LPParams(p=0.5, R=R, ell=1, q=0.5 * (1 - 0.5 ** R), eps=eps)
    p = n_dual ** (-alpha / R)
    q = p * (1 - n_dual * p ** R)
    ell = math.ceil(2 * (1 + beta) * math.log(n_dual) / (eps ** 2 * q))
    return LPParams(p=p, R=R, ell=ell, q=q, eps=eps)


@dataclass
class LocalLPResult:
    x: list[Fraction]
    y: list[Fraction]
    primal_value: Fraction
    dual_value: Fraction
    rounds: int
    coverage: list[int]
    guarded_rows: list[int] = field(default_factory=list)
    subproblems: int = 0

    @property
    def ratio(self) -> Fraction:
        """Upper bound on the approximation factor of both solutions."""
        if self.dual_value == 0:
            return Fraction(1) if self.primal_value == 0 else Fraction(10**18)
        return self.primal_value / self.dual_value


def _solve_sub(lp: CanonicalLP, rows: tuple[int, ...], cache: dict):
    hit = cache.get(rows)
    if hit is not None:
        return hit
    sub, row_ids, col_ids = lp.restrict(rows)
    try:
        _, x, y = solve_packing(sub)
    except (LPUnbounded, LPInfeasible) as exc:
        raise InfeasibleSubLP(f"sub-LP on rows {rows} failed: {exc}") from exc
    hit = (col_ids, x, row_ids, y)
    cache[rows] = hit
    return hit


def solve_lp_local(lp: CanonicalLP, ell: int, p: float, R: int, seed: int = 0, *,
                   cache: Optional[dict] = None, workers: int = 1) -> LocalLPResult:
    """Feasible covering ``x`` and packing ``y`` built from ``ell`` decompositions.

    ``cache`` may be shared across calls on the same LP to reuse sub-LP
    solutions for repeated row sets.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if cache is None:
        cache = {}
    n_p, n_d = lp.n_primal, lp.n_dual
    net = build_lp_network(lp)
    conflict = net.decomposition_graph()
    decs, rounds = ls_decompose_many(conflict, p, R, ell, seed, workers=workers)

    x_sum = [Fraction(0)] * n_p
    y_sum = [Fraction(0)] * n_d
    coverage = [0] * n_d
    solved = 0
    for dec in decs:
        used: set[int] = set()
        for members in dec.clusters().values():
            col_ids, x, row_ids, y = _solve_sub(lp, tuple(sorted(members)), cache)
            solved += 1
            if used.intersection(col_ids):
                raise InvariantViolation("clusters of one decomposition share a variable")
            used.update(col_ids)
            for i, v in zip(col_ids, x):
                x_sum[i] += v
            for j, v in zip(row_ids, y):
                y_sum[j] += v
            for j in row_ids:
                coverage[j] += 1

    y = [v / ell for v in y_sum]

    x = list(x_sum)
    activity = lp.row_activity(x)
    guarded = []
    for j, row in enumerate(lp.rows):
        if lp.b[j] > 0 and activity[j] == 0:
            # no instance selected this row: lift its cheapest column
            i, a = min(row, key=lambda t: (lp.c[t[0]] / t[1], t[0]))
            x[i] += lp.b[j] / a
            guarded.append(j)
    if guarded:
        activity = lp.row_activity(x)
    ratio = [activity[j] / lp.b[j] if lp.b[j] > 0 else None for j in range(n_d)]
    scale: list[Optional[Fraction]] = [None] * n_p
    for j, row in enumerate(lp.rows):
        if ratio[j] is None:
            continue
        for i, _ in row:
            if scale[i] is None or ratio[j] < scale[i]:
                scale[i] = ratio[j]
    x = [Fraction(0) if s is None else xi / s for xi, s in zip(x, scale)]

    if not lp.primal_feasible(x):
        raise InvariantViolation("combined covering solution is infeasible")
    if not lp.dual_feasible(y):
        raise InvariantViolation("averaged packing solution is infeasible")
    return LocalLPResult(
        x=x,
        y=y,
        primal_value=lp.primal_value(x),
        dual_value=lp.dual_value(y),
        rounds=rounds,
        coverage=coverage,
        guarded_rows=guarded,
        subproblems=solved,
    )

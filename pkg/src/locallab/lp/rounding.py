"""Randomized rounding of fractional covering and packing solutions.

Both routines need a 0/1 constraint matrix. Each variable draws from its
own random stream (``engine.node_rng(seed, index)``), as if every variable
were held by a separate network node.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..engine import node_rng
from ..errors import InvalidCoefficients
from .model import CanonicalLP

DEFAULT_LAMBDA = 4.0


def _require_zero_one(lp: CanonicalLP) -> None:
    if not lp.is_zero_one():
        raise InvalidCoefficients("rounding requires every nonzero coefficient to be 1")


def repair_covering(lp: CanonicalLP, x: list[int]) -> list[int]:
    """Raise the cheapest column of every unsatisfied row by its deficit.

    All deficits are measured before any change, as in a single round.
    """
    need = [math.ceil(b) for b in lp.b]
    have = lp.row_activity(x)
    out = list(x)
    for j, row in enumerate(lp.rows):
        deficit = need[j] - have[j]
        if deficit > 0:
            i = min((i for i, _ in row), key=lambda t: (lp.c[t], t))
            out[i] += int(deficit)
    return out


def round_covering(lp: CanonicalLP, x: Sequence, lam: float = DEFAULT_LAMBDA, seed: int = 0) -> list[int]:
    """Integral ``x'`` with ``A x' >= ceil(b)``.

    Variables at or above ``1/(lam ln Dp)`` are rounded up, smaller ones are
    set to 1 with probability ``x_i lam ln Dp`` (``Dp`` = most rows any
    variable appears in). When ``ln Dp < 1`` only the repair step runs,
    starting from zero.
    """
    _require_zero_one(lp)
    if len(x) != lp.n_primal:
        raise ValueError("x has the wrong length")
    log_dp = math.log(lp.primal_degree) if lp.primal_degree > 0 else 0.0
    if log_dp < 1:
        return repair_covering(lp, [0] * lp.n_primal)
    scale = lam * log_dp
    out = []
    for i, xi in enumerate(x):
        xi = Fraction(xi)
        if xi * Fraction(scale) >= 1:
            out.append(math.ceil(xi))
        elif xi <= 0:
            out.append(0)
        else:
            out.append(int(node_rng(seed, i).random() < float(xi) * scale))
    return repair_covering(lp, out)


def round_packing(lp: CanonicalLP, y: Sequence, seed: int = 0) -> list[int]:
    """Integral ``y'`` with ``A^T y' <= floor(c)``.

    ``y_i >= 1`` is rounded down; ``0 < y_i < 1`` becomes 1 with probability
    ``1/(2 e Dd)`` (``Dd`` = largest row support); ``y_i = 0`` stays 0. Every
    variable occurring in a violated constraint falls back to ``floor(y_i)``.
    """
    _require_zero_one(lp)
    if len(y) != lp.n_dual:
        raise ValueError("y has the wrong length")
    dd = max(lp.dual_degree, 1)
    prob = 1.0 / (2 * math.e * dd)
    floors = [math.floor(Fraction(v)) for v in y]
    out = []
    for j, yj in enumerate(y):
        yj = Fraction(yj)
        if yj >= 1 or yj == 0:
            out.append(floors[j])
        else:
            out.append(int(node_rng(seed, j).random() < prob))
    cap = [math.floor(c) for c in lp.c]
    load = lp.column_load(out)
    violated = {i for i in range(lp.n_primal) if load[i] > cap[i]}
    if violated:
        for j, row in enumerate(lp.rows):
            if any(i in violated for i, _ in row):
                out[j] = floors[j]
    return out

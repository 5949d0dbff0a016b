"""Exact primal simplex over the rationals (Bland's rule).

The solver works on the packing side ``max b.y, A^T y <= c, y >= 0``. With
``c >= 0`` the slack basis is feasible, so no phase one is needed. The
covering optimum ``x`` is read off the final reduced costs of the slacks.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from ..errors import BudgetExceeded, InvariantViolation, LPInfeasible, LPUnbounded
from ..lp.model import PACKING, CanonicalLP

ZERO = mpq(0)


def _q(v: Fraction) -> mpq:
    return mpq(v.numerator, v.denominator)


def _frac(v: mpq) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def solve_packing(lp: CanonicalLP) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Return ``(value, x, y)`` with ``c.x == b.y == value``.

    Raises :class:`LPUnbounded` when the packing side is unbounded, which
    is exactly when the covering side is infeasible.
    """
    n_d, n_p = lp.n_dual, lp.n_primal
    if any(v < 0 for v in lp.c):
        raise ValueError("objective vector must be nonnegative")
    width = n_d + n_p
    # one tableau row per primal column: sum_j a_ji y_j + s_i = c_i
    # (gmpy2 rationals inside the loop; Fractions at the interface)
    tab: list[list[mpq]] = [[ZERO] * width + [_q(lp.c[i])] for i in range(n_p)]
    for j, row in enumerate(lp.rows):
        for i, v in row:
            tab[i][j] = _q(v)
    for i in range(n_p):
        tab[i][n_d + i] = mpq(1)
    obj = [-_q(v) for v in lp.b] + [ZERO] * n_p + [ZERO]
    basis = [n_d + i for i in range(n_p)]

    while True:
        enter = next((t for t in range(width) if obj[t] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for r in range(n_p):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    leave, best = r, ratio
        if leave is None:
            raise LPUnbounded("packing LP is unbounded")
        prow = tab[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            tab[leave] = prow
        nz = [t for t, v in enumerate(prow) if v]
        for r in range(n_p):
            if r != leave:
                f = tab[r][enter]
                if f:
                    row = tab[r]
                    for t in nz:
                        row[t] -= f * prow[t]
        f = obj[enter]
        for t in nz:
            obj[t] -= f * prow[t]
        basis[leave] = enter

    y = [Fraction(0)] * n_d
    for r, var in enumerate(basis):
        if var < n_d:
            y[var] = _frac(tab[r][-1])
    x = [_frac(obj[n_d + i]) for i in range(n_p)]
    return _frac(obj[-1]), x, y


def exact_lp_pair(lp: CanonicalLP, budget: int = 200) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Optimal ``(value, x, y)`` for the pair, with strong duality verified."""
    if lp.n_primal > budget or lp.n_dual > budget:
        raise BudgetExceeded(f"LP of size {lp.n_dual}x{lp.n_primal} exceeds budget {budget}")
    try:
        value, x, y = solve_packing(lp)
    except LPUnbounded:
        if lp.kind == PACKING:
            raise
        raise LPInfeasible("covering LP is infeasible (its packing dual is unbounded)") from None
    if not (lp.primal_feasible(x) and lp.dual_feasible(y)):
        raise InvariantViolation("simplex returned an infeasible pair")
    if lp.primal_value(x) != value or lp.dual_value(y) != value:
        raise InvariantViolation("primal and dual objective values differ")
    return value, x, y

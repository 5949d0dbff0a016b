"""Bipartite incidence graphs D(r, q) over a prime field and girth boosting.

Both sides are copies of ``F_q^r``. Coordinates are laid out as

    1, (1,1), (1,2), (2,1), (2,2), (2,2)', (2,3), (3,2), (3,3), (3,3)', ...

and an L-vector ``l`` is adjacent to a P-vector ``p`` iff for every position
``t = 1..r-1``

    l[t] - p[t] == l[a_t] * p[b_t]   (mod q)

with ``a_t, b_t < t`` fixed by the layout (see :func:`incidence_equations`).
The system is lower triangular in either unknown side, so fixing one
endpoint and the other endpoint's first coordinate fixes the edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import SizeGuard
from ..graph import Graph, two_coloring

DEFAULT_NODE_BUDGET = 2_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def smallest_prime_at_least(m: int) -> int:
    q = max(2, m)
    while not is_prime(q):
        q += 1
    return q


def coordinate_names(r: int) -> list[str]:
    names = ["1", "1,1", "1,2", "2,1"]
    i = 2
    while len(names) < r:
        names += [f"{i},{i}", f"{i},{i}'", f"{i},{i + 1}", f"{i + 1},{i}"]
        i += 1
    return names[:r]


def incidence_equations(r: int) -> list[tuple[int, int]]:
    """``(a_t, b_t)`` for ``t = 1..r-1``: ``l[t] - p[t] = l[a_t] * p[b_t]``."""
    names = coordinate_names(max(r, 1))
    pos = {name: t for t, name in enumerate(coordinate_names(max(r, 4) + 4))}
    eqs = []
    for name in names[1:]:
        if name == "1,1":
            eqs.append((0, 0))
        elif name == "1,2":
            eqs.append((pos["1,1"], 0))
        elif name == "2,1":
            eqs.append((0, pos["1,1"]))
        else:
            i, j = name.rstrip("'").split(",")
            i, j = int(i), int(j)
            if name.endswith("'"):
                eqs.append((pos[f"{i},{i - 1}"], 0))
            elif i == j:
                eqs.append((0, pos[f"{i - 1},{i}"]))
            elif j == i + 1:
                eqs.append((pos[f"{i},{i}"], 0))
            else:  # (i+1, i)
                eqs.append((0, pos[f"{j},{j}'"]))
    return eqs


def adjacent(p: Sequence[int], l: Sequence[int], q: int) -> bool:
    r = len(p)
    return all((l[t] - p[t] - l[a] * p[b]) % q == 0
               for t, (a, b) in enumerate(incidence_equations(r), start=1))


def dq_unique_neighbor(v: Sequence[int], first: int, side: str, q: int) -> list[int]:
    """The neighbor of ``v`` whose first coordinate is ``first``.

    ``side`` names the side ``v`` lives on: ``"P"`` (neighbor is an L-vector)
    or ``"L"`` (neighbor is a P-vector).
    """
    r = len(v)
    if r < 2:
        raise ValueError("r must be at least 2")
    v = [x % q for x in v]
    out = [first % q] + [0] * (r - 1)
    for t, (a, b) in enumerate(incidence_equations(r), start=1):
        if side == "P":
            out[t] = (v[t] + out[a] * v[b]) % q
        elif side == "L":
            out[t] = (v[t] - v[a] * out[b]) % q
        else:
            raise ValueError("side must be 'P' or 'L'")
    return out


# ------------------------------------------------------------- vectorized

def _encode(vecs: np.ndarray, q: int) -> np.ndarray:
    weights = q ** np.arange(vecs.shape[1], dtype=np.int64)
    return vecs @ weights


def _decode(codes: np.ndarray, q: int, r: int) -> np.ndarray:
    out = np.empty((len(codes), r), dtype=np.int64)
    rest = codes.copy()
    for t in range(r):
        out[:, t] = rest % q
        rest //= q
    return out


def _l_neighbors(pvecs: np.ndarray, l1, q: int) -> np.ndarray:
    r = pvecs.shape[1]
    out = np.empty_like(pvecs)
    out[:, 0] = l1
    for t, (a, b) in enumerate(incidence_equations(r), start=1):
        out[:, t] = (pvecs[:, t] + out[:, a] * pvecs[:, b]) % q
    return out


def _with_first(first: int, q: int, r: int) -> np.ndarray:
    """All vectors of ``F_q^r`` whose first coordinate is ``first``."""
    tail = _decode(np.arange(q ** (r - 1), dtype=np.int64), q, r - 1)
    return np.hstack([np.full((len(tail), 1), first, dtype=np.int64), tail])


def dq_graph(r: int, q: int, budget: int = DEFAULT_NODE_BUDGET) -> Graph:
    """D(r, q): P-vector with code ``c`` is node ``c``, L-vector is ``q**r + c``.

    Node labels are 0 for P and 1 for L. Codes are base-``q`` with the first
    coordinate least significant.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if not is_prime(q):
        raise ValueError("q must be prime")
    if 2 * q ** r > budget:
        raise SizeGuard(f"D({r},{q}) has {2 * q ** r} nodes, budget {budget}")
    size = q ** r
    pvecs = _decode(np.arange(size, dtype=np.int64), q, r)
    src, dst = [], []
    for l1 in range(q):
        src.append(np.arange(size, dtype=np.int64))
        dst.append(size + _encode(_l_neighbors(pvecs, l1, q), q))
    u = np.concatenate(src)
    v = np.concatenate(dst)
    edges = list(zip(u.tolist(), v.tolist()))
    return Graph(2 * size, edges, [0] * size + [1] * size)


@dataclass
class BoostPlan:
    m: int
    q: int
    r: int
    side: list[int]
    color: list[int]

    @property
    def node_limit(self) -> int:
        return 2 * self.m * self.q ** (self.r - 1)


def boost_plan(gk_naive: Graph, k: int, side: Optional[Sequence[int]] = None) -> BoostPlan:
    """Field size, vector length and per-side injective field labels."""
    if k < 2:
        raise ValueError("girth boosting needs k >= 2")
    if side is None:
        side = two_coloring(gk_naive)
        if side is None:
            raise ValueError("input graph is not bipartite")
    side = list(side)
    for u, v in gk_naive.edges():
        if side[u] == side[v]:
            raise ValueError("side assignment is not a bipartition")
    counts = [side.count(0), side.count(1)]
    m = max(counts)
    q = smallest_prime_at_least(m)
    r = max(3, 2 * k - 3)
    seen = [0, 0]
    color = []
    for v in gk_naive.nodes():
        color.append(seen[side[v]])
        seen[side[v]] += 1
    return BoostPlan(m, q, r, side, color)


def girth_boost(gk_naive: Graph, k: int, side: Optional[Sequence[int]] = None,
                budget: int = DEFAULT_NODE_BUDGET) -> Graph:
    """Subgraph of D(r, q) following the adjacency of ``gk_naive``.

    A P-vector ``p`` and its neighbor ``l`` stay joined iff the naive nodes
    labeled ``p[0]`` (side 0) and ``l[0]`` (side 1) are adjacent. Isolated
    vectors are dropped. Output labels are the labels of the originating
    naive nodes (cluster ids for a naive cluster-tree instance).
    """
    plan = boost_plan(gk_naive, k, side)
    q, r = plan.q, plan.r
    if plan.node_limit > budget:
        raise SizeGuard(f"boosted graph may reach {plan.node_limit} nodes, budget {budget}")
    owner = [dict(), dict()]
    for v in gk_naive.nodes():
        owner[plan.side[v]][plan.color[v]] = v
    tails = {}
    src, dst = [], []
    for u, v in gk_naive.edges():
        if plan.side[u] == 1:
            u, v = v, u
        a, b = plan.color[u], plan.color[v]
        pv = tails.get(a)
        if pv is None:
            pv = tails[a] = _with_first(a, q, r)
        src.append(_encode(pv, q))
        dst.append(_encode(_l_neighbors(pv, b, q), q))
    if not src:
        return Graph(0, [])
    pcodes = np.concatenate(src)
    lcodes = np.concatenate(dst)
    p_unique, p_idx = np.unique(pcodes, return_inverse=True)
    l_unique, l_idx = np.unique(lcodes, return_inverse=True)
    n_p = len(p_unique)
    labels = [gk_naive.label(owner[0][int(c % q)]) for c in p_unique]
    labels += [gk_naive.label(owner[1][int(c % q)]) for c in l_unique]
    edges = list(zip(p_idx.tolist(), (l_idx + n_p).tolist()))
    return Graph(n_p + len(l_unique), edges, labels)

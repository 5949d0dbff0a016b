"""Exact solvers for small graphs: vertex cover, dominating set, connected
dominating set, maximum matching and a maximal-independent-set checker.

The NP-hard problems use branch and bound over bitmasks. Every returned
witness is re-validated before it is handed back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import networkx as nx

from ..errors import BudgetExceeded, DisconnectedGraph, InvariantViolation
from ..graph import (
    Graph,
    is_connected,
    is_connected_set,
    is_dominating_set,
    is_independent_set,
    is_matching,
    is_vertex_cover,
)
from ..lp.model import CanonicalLP
from .simplex import exact_lp_pair

PROBLEMS = ("MVC", "MDS", "MCDS", "MaxM", "MIS")


@dataclass
class ExactSolution:
    problem: str
    value: object
    witness: object
    extra: dict = field(default_factory=dict)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _masks(g: Graph) -> list[int]:
    nb = [0] * g.n
    for u, v in g.edges():
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    return nb


# ----------------------------------------------------------------- MVC

def _greedy_matching(nb: list[int], alive: int) -> list[tuple[int, int]]:
    used = 0
    out = []
    for u in _bits(alive):
        if used >> u & 1:
            continue
        free = nb[u] & alive & ~used
        if free:
            v = (free & -free).bit_length() - 1
            used |= (1 << u) | (1 << v)
            out.append((u, v))
    return out


def min_vertex_cover(g: Graph) -> list[int]:
    nb = _masks(g)
    full = (1 << g.n) - 1
    start = _greedy_matching(nb, full)
    best = [sum(1 << w for e in start for w in e)]
    best_size = [len(start) * 2]

    def rec(alive: int, chosen: int, size: int) -> None:
        # alive: vertices whose incident uncovered edges remain
        while True:
            changed = False
            for v in _bits(alive):
                if not alive >> v & 1:
                    continue
                d = nb[v] & alive
                if d == 0:
                    alive &= ~(1 << v)
                    changed = True
                elif d & (d - 1) == 0:
                    # degree one: taking the neighbor is safe
                    w = d.bit_length() - 1
                    chosen |= 1 << w
                    size += 1
                    alive &= ~(1 << w) & ~(1 << v)
                    changed = True
            if not changed:
                break
        if size >= best_size[0]:
            return
        if not alive:
            best[0], best_size[0] = chosen, size
            return
        if size + len(_greedy_matching(nb, alive)) >= best_size[0]:
            return
        v = max(_bits(alive), key=lambda u: bin(nb[u] & alive).count("1"))
        nv = nb[v] & alive
        rec(alive & ~(1 << v), chosen | (1 << v), size + 1)
        rec(alive & ~nv & ~(1 << v), chosen | nv, size + bin(nv).count("1"))

    rec(full, 0, 0)
    return _bits(best[0])


# ----------------------------------------------------------------- MDS

def min_dominating_set(g: Graph) -> list[int]:
    n = g.n
    closed = [m | (1 << v) for v, m in enumerate(_masks(g))]
    full = (1 << n) - 1
    best = [full]
    best_size = [n]

    def rec(undominated: int, chosen: int, size: int, banned: int) -> None:
        if not undominated:
            if size < best_size[0]:
                best[0], best_size[0] = chosen, size
            return
        gain = max(bin(closed[w] & undominated).count("1") for w in range(n) if not banned >> w & 1)
        if gain == 0:
            return
        need = -(-bin(undominated).count("1") // gain)
        if size + need >= best_size[0]:
            return
        # branch on the undominated vertex with the fewest options
        pick, opts = None, None
        for u in _bits(undominated):
            o = closed[u] & ~banned
            if pick is None or bin(o).count("1") < bin(opts).count("1"):
                pick, opts = u, o
                if opts == 0:
                    return
        for w in _bits(opts):
            rec(undominated & ~closed[w], chosen | (1 << w), size + 1, banned)
            banned |= 1 << w

    rec(full, 0, 0, 0)
    return _bits(best[0])


# ----------------------------------------------------------------- MCDS

def min_connected_dominating_set(g: Graph) -> list[int]:
    n = g.n
    if n == 0:
        return []
    if not is_connected(g):
        raise DisconnectedGraph("connected dominating set needs a connected graph")
    nb = _masks(g)
    closed = [m | (1 << v) for v, m in enumerate(nb)]
    full = (1 << n) - 1
    if n == 1:
        return [0]
    # start from a known CDS: all non-leaves of a BFS tree
    parent = {0: None}
    order = [0]
    for u in order:
        for w in _bits(nb[u]):
            if w not in parent:
                parent[w] = u
                order.append(w)
    inner = {p for p in parent.values() if p is not None}
    best = [sum(1 << v for v in inner) or 1]
    best_size = [len(inner) or 1]
    lower = len(min_dominating_set(g))

    # every CDS contains a vertex of N[u] for the least-degree vertex u
    u0 = min(range(n), key=lambda v: bin(nb[v]).count("1"))
    roots = _bits(closed[u0])

    def grow(s: int, size: int, dom: int, frontier: int, excluded: int) -> None:
        if dom == full:
            if size < best_size[0]:
                best[0], best_size[0] = s, size
            return
        if size + 1 >= best_size[0] or best_size[0] == lower:
            return
        cand = frontier & ~excluded
        if not cand:
            return
        undominated = full & ~dom
        gain = max(bin(closed[w] & undominated).count("1") for w in _bits(cand | (full & ~excluded & ~s)))
        if gain and size + -(-bin(undominated).count("1") // gain) >= best_size[0]:
            return
        v = (cand & -cand).bit_length() - 1
        grow(s | (1 << v), size + 1, dom | closed[v], (frontier | nb[v]) & ~s & ~(1 << v), excluded)
        grow(s, size, dom, frontier, excluded | (1 << v))

    excluded = 0
    for r in roots:
        grow(1 << r, 1, closed[r], nb[r], excluded | (1 << r))
        excluded |= 1 << r
    return _bits(best[0])


# ----------------------------------------------------------------- MaxM

def max_matching(g: Graph) -> list[tuple[int, int]]:
    h = nx.Graph()
    h.add_nodes_from(g.nodes())
    h.add_edges_from(g.edges())
    m = nx.max_weight_matching(h, maxcardinality=True)
    return sorted(tuple(sorted(e)) for e in m)


def is_maximal_independent_set(g: Graph, nodes: Iterable[int]) -> bool:
    s = set(nodes)
    if not is_independent_set(g, s):
        return False
    return all(v in s or any(w in s for w in g.neighbors(v)) for v in g.nodes())


# ----------------------------------------------------------------- dispatch

def exact_solve(problem: str, g: Graph, *, budget: int = 32, mis: Optional[Iterable[int]] = None,
                matching_budget: int = 200) -> ExactSolution:
    """Exact optimum of ``problem`` on ``g``.

    ``problem`` is one of ``MVC``, ``MDS``, ``MCDS``, ``MaxM`` or ``MIS``.
    For ``MIS`` the set given in ``mis`` is checked for independence and
    maximality instead of optimizing; ``value`` is then a boolean.
    """
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}; expected one of {PROBLEMS}")
    if problem == "MaxM":
        if g.n > matching_budget:
            raise BudgetExceeded(f"n={g.n} exceeds matching budget {matching_budget}")
        m = max_matching(g)
        if not is_matching(g, m):
            raise InvariantViolation("matching witness invalid")
        return ExactSolution(problem, len(m), m)
    if problem == "MIS":
        if mis is None:
            raise ValueError("MIS mode checks a given set; pass mis=...")
        s = sorted(set(mis))
        ok = is_maximal_independent_set(g, s)
        return ExactSolution(problem, ok, s, {"independent": is_independent_set(g, s)})
    if g.n > budget:
        raise BudgetExceeded(f"n={g.n} exceeds exact budget {budget}")
    if problem == "MVC":
        w = min_vertex_cover(g)
        ok = is_vertex_cover(g, w)
    elif problem == "MDS":
        w = min_dominating_set(g)
        ok = is_dominating_set(g, w)
    else:
        w = min_connected_dominating_set(g)
        ok = g.n == 0 or (is_dominating_set(g, w) and is_connected_set(g, w))
    if not ok:
        raise InvariantViolation(f"{problem} witness failed validation")
    return ExactSolution(problem, len(w), w)


def exact_lp(lp: CanonicalLP, budget: int = 200) -> ExactSolution:
    """Exact optimum of a covering/packing pair; ``value`` is a Fraction."""
    value, x, y = exact_lp_pair(lp, budget)
    return ExactSolution("LP", value, x, {"x": x, "y": y, "dual_value": lp.dual_value(y)})


# ------------------------------------------------------- covering ILP

def exact_covering_ilp(lp: CanonicalLP, node_limit: int = 2_000_000) -> tuple[Fraction, list[int]]:
    """Minimum-cost nonnegative integer ``x`` with ``A x >= b`` for 0/1 ``A``.

    Branches on which column of an unsatisfied row is raised next; columns
    passed over in a branch are frozen for the rest of that subtree, so every
    integer point is reached at most once.
    """
    rows = [[i for i, _ in r] for r in lp.rows]
    b = [math.ceil(v) for v in lp.b]
    c = list(lp.c)
    x0 = [0] * lp.n_primal
    best = [None, None]
    budget = [node_limit]

    # greedy incumbent: satisfy rows in order with cheapest column
    x = list(x0)
    for j, r in enumerate(rows):
        have = sum(x[i] for i in r)
        if have < b[j]:
            i = min(r, key=lambda t: (c[t], t))
            x[i] += b[j] - have
    best[0], best[1] = lp.primal_value(x), x

    def rec(x, deficit, cost, frozen):
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("covering ILP search exceeded node limit")
        open_rows = [j for j, d in enumerate(deficit) if d > 0]
        if not open_rows:
            if cost < best[0]:
                best[0], best[1] = cost, list(x)
            return
        bound = cost
        pick = None
        for j in open_rows:
            free = [i for i in rows[j] if i not in frozen]
            if not free:
                return
            bound = max(bound, cost + deficit[j] * min(c[i] for i in free))
            if pick is None or len(free) < len(pick[1]):
                pick = (j, free)
        if bound >= best[0]:
            return
        j, free = pick
        newly = set()
        for i in sorted(free, key=lambda t: (c[t], t)):
            x[i] += 1
            d2 = list(deficit)
            for jj in lp_cols[i]:
                d2[jj] -= 1
            rec(x, d2, cost + c[i], frozen | newly)
            x[i] -= 1
            newly.add(i)

    lp_cols = [[] for _ in range(lp.n_primal)]
    for j, r in enumerate(rows):
        for i in r:
            lp_cols[i].append(j)
    rec(list(x0), list(b), Fraction(0), frozenset())
    return best[0], best[1]

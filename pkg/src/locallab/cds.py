"""Connected dominating sets: sparse spanning subgraphs and connectors.

Edge weights are the ordered identifier pairs ``(min id, max id)`` compared
lexicographically. ``sparse_spanning_subgraph`` drops every edge that is
the heaviest edge of some cycle of length at most ``2k``; all drop tests
look at the input graph, so the result does not depend on edge order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import DisconnectedGraph, InvariantViolation, NotDominating
from .graph import (
    Graph,
    distance_power_graph,
    is_connected,
    is_connected_set,
    is_dominating_set,
    shortest_path,
)
from .lp.mds import mds_run
from .lp.rounding import DEFAULT_LAMBDA

Edge = tuple[int, int]


def edge_weight(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def closes_short_cycle(g: Graph, u: int, v: int, k: int) -> bool:
    """True iff a path ``u -> v`` of length <= 2k-1 uses only lighter edges."""
    w = edge_weight(u, v)
    limit = 2 * k - 1
    if limit < 2:
        return False
    dist = {u: 0}
    frontier = deque([u])
    while frontier:
        a = frontier.popleft()
        da = dist[a]
        if da == limit:
            continue
        for b in g.neighbors(a):
            if b in dist or edge_weight(a, b) >= w:
                continue
            if b == v:
                return True
            dist[b] = da + 1
            frontier.append(b)
    return False


def sparse_spanning_subgraph(g: Graph, k: int) -> list[Edge]:
    """Edges kept by the short-cycle elimination (sorted ``(u, v)``, u < v)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not is_connected(g):
        raise DisconnectedGraph("sparse spanning subgraph needs a connected graph")
    return [(u, v) for u, v in g.edges() if not closes_short_cycle(g, u, v, k)]


def edge_bound(n: int, k: int) -> Optional[float]:
    """Concrete size check ``n + n**(1 + 2/(k-1))`` for ``k >= 2``."""
    if k < 2:
        return None
    return n + n ** (1 + 2 / (k - 1))


def _connectors(g: Graph, a: int, b: int) -> list[int]:
    path = shortest_path(g, a, b)
    if path is None or len(path) > 4:
        raise InvariantViolation(f"members {a}, {b} are not within distance 3")
    return path[1:-1]


def _require_dominating(g: Graph, dom: Iterable[int]) -> list[int]:
    d = sorted(set(dom))
    if not d or not is_dominating_set(g, d):
        raise NotDominating("the given set does not dominate the graph")
    if not is_connected(g):
        raise DisconnectedGraph("graph must be connected")
    return d


def connect_dominating_set(g: Graph, dom: Iterable[int]) -> list[int]:
    """Extend a dominating set to a connected one with at most ``3|D| - 2`` nodes.

    A BFS tree of the distance-3 graph on ``D`` (rooted at the smallest id)
    is realized in ``g``: each tree edge adds the interior nodes of the
    lexicographically smallest shortest path between its ends.
    """
    d = _require_dominating(g, dom)
    gd, members = distance_power_graph(g, d, 3)
    seen = {0}
    order = deque([0])
    out = set(d)
    while order:
        a = order.popleft()
        for b in gd.neighbors(a):
            if b not in seen:
                seen.add(b)
                order.append(b)
                out.update(_connectors(g, members[a], members[b]))
    if len(seen) != len(members):
        raise InvariantViolation("distance-3 graph on a dominating set is disconnected")
    return sorted(out)


@dataclass
class McdsResult:
    dominating: list[int]
    connected: list[int]
    kept_edges: int
    member_edges: int


def connect_sparse(g: Graph, dom: Iterable[int], k: int) -> tuple[list[int], int, int]:
    """Connect ``dom`` through every edge kept by the sparse subgraph of ``G_D``."""
    d = _require_dominating(g, dom)
    gd, members = distance_power_graph(g, d, 3)
    kept = sparse_spanning_subgraph(gd, k)
    out = set(d)
    for a, b in kept:
        out.update(_connectors(g, members[a], members[b]))
    return sorted(out), len(kept), gd.m


def mcds_pipeline(g: Graph, k: int, ell: int, p: float, R: int, lam: float = DEFAULT_LAMBDA,
                  seed: int = 0) -> McdsResult:
    """Dominating set from the LP pipeline, connected through a sparse ``G_D``."""
    if not is_connected(g):
        raise DisconnectedGraph("graph must be connected")
    dom = mds_run(g, ell, p, R, lam, seed).nodes
    cds, kept, total = connect_sparse(g, dom, k)
    if not (is_dominating_set(g, cds) and is_connected_set(g, cds)):
        raise InvariantViolation("pipeline output is not a connected dominating set")
    return McdsResult(dom, cds, kept, total)

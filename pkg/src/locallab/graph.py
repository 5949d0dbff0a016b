"""Immutable simple undirected graphs and the pure graph algorithms used
throughout the package: BFS distances, girth, k-hop views and the
reduction transforms (line graph, CDS subdivision, distance powers).
"""

from __future__ import annotations

import math
from bisect import bisect_left
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .errors import GraphError, NonTreeView
from .viewtree import ViewTree

INF = math.inf


class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Adjacency lists are sorted tuples. ``labels`` is an optional tuple of
    integers, one per node (used for cluster ids and label-sensitive views).
    """

    __slots__ = ("_adj", "labels", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Optional[Sequence[int]] = None):
        if n < 0:
            raise GraphError("node count must be nonnegative")
        nbrs: list[list[int]] = [[] for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            nbrs[u].append(v)
            nbrs[v].append(u)
            m += 1
        adj = []
        for v, lst in enumerate(nbrs):
            lst.sort()
            for a, b in zip(lst, lst[1:]):
                if a == b:
                    raise GraphError(f"duplicate edge ({v}, {a})")
            adj.append(tuple(lst))
        self._adj: tuple[tuple[int, ...], ...] = tuple(adj)
        self._m = m
        if labels is not None:
            labels = tuple(int(x) for x in labels)
            if len(labels) != n:
                raise GraphError("labels must have one entry per node")
        self.labels: Optional[tuple[int, ...]] = labels

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]], labels=None) -> "Graph":
        edges = [(u, v) for u, nb in enumerate(adj) for v in nb if u < v]
        g = cls(len(adj), edges, labels)
        for u, nb in enumerate(adj):
            if tuple(sorted(nb)) != g._adj[u]:
                raise GraphError("adjacency is not symmetric")
        return g

    @property
    def node_count(self) -> int:
        return len(self._adj)

    n = node_count

    @property
    def edge_count(self) -> int:
        return self._m

    m = edge_count

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        a = self._adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nb in enumerate(self._adj):
            for v in nb:
                if u < v:
                    yield (u, v)

    def nodes(self) -> range:
        return range(len(self._adj))

    def label(self, v: int) -> Optional[int]:
        return None if self.labels is None else self.labels[v]

    def with_labels(self, labels: Optional[Sequence[int]]) -> "Graph":
        return Graph(self.n, self.edges(), labels)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with node ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("perm must be a permutation of the node ids")
        labels = None
        if self.labels is not None:
            labels = [0] * self.n
            for v, lab in enumerate(self.labels):
                labels[perm[v]] = lab
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()), labels)

    def induced(self, nodes: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the list mapping new ids to old ids."""
        keep = sorted(set(nodes))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u in keep for v in self._adj[u] if u < v and v in index]
        labels = None if self.labels is None else [self.labels[v] for v in keep]
        return Graph(len(keep), edges, labels), keep

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self.labels == other.labels

    def __hash__(self):
        return hash((self._adj, self.labels))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- traversal

def bfs_distances(g: Graph, source: int, cutoff: Optional[int] = None) -> dict[int, int]:
    dist = {source: 0}
    frontier = [source]
    d = 0
    adj = g.adjacency
    while frontier and (cutoff is None or d < cutoff):
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def shortest_path(g: Graph, s: int, t: int) -> Optional[list[int]]:
    """Lexicographically smallest shortest path from ``s`` to ``t``.

    Distances to ``t`` are computed first; the path then greedily steps to
    the smallest-id neighbor that is one hop closer.
    """
    dist = bfs_distances(g, t)
    if s not in dist:
        return None
    path = [s]
    v = s
    while v != t:
        v = next(w for w in g.adjacency[v] if dist.get(w, -1) == dist[v] - 1)
        path.append(v)
    return path


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in g.nodes():
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(bfs_distances(g, 0)) == g.n


def two_coloring(g: Graph) -> Optional[list[int]]:
    """Proper 2-coloring (each component rooted at its smallest node), or None."""
    color = [-1] * g.n
    for s in g.nodes():
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


# -------------------------------------------------------------------- girth

def girth(g: Graph, cutoff: Optional[int] = None):
    """Length of a shortest cycle, or ``math.inf`` for forests.

    One BFS per node; a non-tree edge ``(u, w)`` met from source ``s``
    closes a walk of length ``d(u) + d(w) + 1`` containing a cycle, and the
    BFS from any vertex on a shortest cycle finds it exactly. With
    ``cutoff`` only cycles of length ``<= cutoff`` are searched for and
    ``inf`` means none exist.
    """
    n = g.n
    adj = g.adjacency
    best = INF if cutoff is None else cutoff + 1
    dist = [-1] * n
    parent = [-1] * n
    for s in range(n):
        if len(adj[s]) < 2:
            continue
        touched = [s]
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du >= best:
                break
            pu = parent[u]
            for w in adj[u]:
                dw = dist[w]
                if dw < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
                elif w != pu:
                    length = du + dw + 1
                    if length < best:
                        best = length
        for v in touched:
            dist[v] = -1
            parent[v] = -1
        if best == 3:
            break
    if cutoff is not None and best > cutoff:
        return INF
    return best


# --------------------------------------------------------------------- views

def khop_view(g: Graph, v: int, k: int, labeled: bool = False) -> ViewTree:
    """Canonical k-hop view tree of ``v``.

    The view is the subgraph induced by the nodes within distance ``k`` with
    edges between two nodes at distance exactly ``k`` dropped. When that
    subgraph is a tree it is returned in canonical form; otherwise
    :class:`NonTreeView` is raised.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"node {v} out of range")
    if k < 0:
        raise ValueError("k must be nonnegative")
    adj = g.adjacency
    depth = {v: 0}
    parent = {v: -1}
    order = [v]
    queue = deque([v])
    while queue:
        u = queue.popleft()
        du = depth[u]
        if du == k:
            continue
        for w in adj[u]:
            if w not in depth:
                depth[w] = du + 1
                parent[w] = u
                order.append(w)
                queue.append(w)
            elif w != parent[u]:
                raise NonTreeView(f"cycle through edge ({u}, {w}) within distance {k} of {v}")
    kids: dict[int, list[ViewTree]] = {}
    lab = g.labels if labeled else None
    built: dict[int, ViewTree] = {}
    for u in reversed(order):
        t = ViewTree(None if lab is None else lab[u], kids.pop(u, ()))
        built[u] = t
        p = parent[u]
        if p >= 0:
            kids.setdefault(p, []).append(t)
    return built[v]


# ----------------------------------------------------------------- transforms

def line_graph(g: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Line graph of ``g`` and the edge represented by each of its nodes.

    Node ``i`` of the result is the ``i``-th edge of ``g`` in :meth:`Graph.edges`
    order.
    """
    elist = list(g.edges())
    index = {e: i for i, e in enumerate(elist)}
    out = set()
    for v in g.nodes():
        inc = [index[(min(v, w), max(v, w))] for w in g.adjacency[v]]
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                x, y = inc[a], inc[b]
                out.add((min(x, y), max(x, y)))
    return Graph(len(elist), sorted(out)), elist


def subdivide_for_cds(g: Graph) -> Graph:
    """Replace every edge ``(u, v)`` by the path ``u - u_e - v_e - v``.

    New nodes for the ``i``-th edge are ``n + 2i`` (next to ``u``) and
    ``n + 2i + 1`` (next to ``v``). Original nodes keep label 0 and the new
    ones get label 1.
    """
    n = g.n
    edges = []
    for i, (u, v) in enumerate(g.edges()):
        ue, ve = n + 2 * i, n + 2 * i + 1
        edges += [(u, ue), (ue, ve), (v, ve)]
    total = n + 2 * g.m
    return Graph(total, edges, [0] * n + [1] * (total - n))


def distance_power_graph(g: Graph, subset: Iterable[int], d: int) -> tuple[Graph, list[int]]:
    """Graph on ``subset`` joining members at ``g``-distance in ``1..d``.

    Returns the graph (node ``i`` = ``members[i]``) and the sorted member list.
    """
    members = sorted(set(subset))
    if not members:
        raise GraphError("subset must be nonempty")
    if d < 1:
        raise ValueError("d must be positive")
    index = {v: i for i, v in enumerate(members)}
    edges = []
    for v in members:
        for w, dist in bfs_distances(g, v, cutoff=d).items():
            if dist > 0 and w in index and v < w:
                edges.append((index[v], index[w]))
    labels = None if g.labels is None else [g.labels[v] for v in members]
    return Graph(len(members), edges, labels), members


# ------------------------------------------------------------- set predicates

def is_vertex_cover(g: Graph, nodes: Iterable[int]) -> bool:
    s = set(nodes)
    return all(u in s or v in s for u, v in g.edges())


def is_dominating_set(g: Graph, nodes: Iterable[int]) -> bool:
    s = set(nodes)
    return all(v in s or any(w in s for w in g.adjacency[v]) for v in g.nodes())


def is_connected_set(g: Graph, nodes: Iterable[int]) -> bool:
    s = set(nodes)
    if not s:
        return False
    sub, _ = g.induced(s)
    return is_connected(sub)


def is_independent_set(g: Graph, nodes: Iterable[int]) -> bool:
    s = set(nodes)
    return not any(u in s and v in s for u, v in g.edges())


def is_matching(g: Graph, edges: Iterable[tuple[int, int]]) -> bool:
    used = set()
    for u, v in edges:
        if not g.has_edge(u, v) or u in used or v in used:
            return False
        used.update((u, v))
    return True

"""Cluster trees, their naive instantiation and cluster-level view unrolling.

An arc ``(C, D)`` with link index ``l`` carries the label
``(delta_l, delta_{l+1})``: every node of the parent ``C`` has ``delta_l``
neighbors in the child ``D`` and every node of ``D`` has ``delta_{l+1}``
neighbors in ``C``. Hence ``|D| = |C| * delta_l / delta_{l+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import numpy as np

from ..errors import NonIntegralSizes
from ..graph import Graph
from ..viewtree import ViewTree


def delta_sequence(delta: int, k: int) -> tuple[int, ...]:
    """``delta_i = 2**(i(i-1)/2) * delta**i`` for ``i = 0..k+1``."""
    if delta < 1:
        raise ValueError("delta must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return tuple(2 ** (i * (i - 1) // 2) * delta ** i for i in range(k + 2))


def geometric_deltas(k: int, base: int = 2) -> tuple[int, ...]:
    """``(1, base, base**2, ...)`` with ``k + 2`` entries."""
    return tuple(base ** i for i in range(k + 2))


@dataclass(frozen=True)
class Arc:
    parent: int
    child: int
    link: int


@dataclass
class Cluster:
    id: int
    parent: Optional[int]
    link: Optional[int]
    level: int
    ratio: Fraction
    depth: int = 0
    size: Optional[int] = None


@dataclass
class ClusterTree:
    k: int
    deltas: tuple[int, ...]
    clusters: list[Cluster]
    arcs: list[Arc]
    n0: Optional[int] = None
    _adj: Optional[list] = field(default=None, repr=False)

    def label(self, arc: Arc) -> tuple[int, int]:
        return self.deltas[arc.link], self.deltas[arc.link + 1]

    def children(self, cid: int) -> list[Arc]:
        return [a for a in self.arcs if a.parent == cid]

    @property
    def sizes(self) -> list[int]:
        if self.n0 is None:
            raise ValueError("cluster sizes need n0")
        return [c.size for c in self.clusters]

    @property
    def node_count(self) -> int:
        return sum(self.sizes)

    def cluster_graph(self) -> "ClusterGraph":
        links: list[list[tuple[int, int]]] = [[] for _ in self.clusters]
        for a in self.arcs:
            d_c, d_d = self.label(a)
            links[a.parent].append((a.child, d_c))
            links[a.child].append((a.parent, d_d))
        return ClusterGraph(links)

    def leaves(self) -> list[int]:
        deg = [0] * len(self.clusters)
        for a in self.arcs:
            deg[a.parent] += 1
            deg[a.child] += 1
        return [c for c, d in enumerate(deg) if d == 1]


def _check_deltas(k: int, deltas: Sequence[int]) -> tuple[int, ...]:
    deltas = tuple(int(d) for d in deltas)
    if len(deltas) < k + 2:
        raise ValueError(f"need {k + 2} delta values for k={k}, got {len(deltas)}")
    if deltas[0] < 1 or any(b <= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("deltas must be positive and strictly increasing")
    return deltas[: k + 2]


def _grow(k: int) -> tuple[list[tuple[Optional[int], Optional[int]]], list[Arc]]:
    """Cluster structure ``(parent, link)`` per cluster and the arc list."""
    nodes: list[tuple[Optional[int], Optional[int]]] = [(None, None), (0, 0), (0, 1), (1, 0)]
    arcs = [Arc(0, 1, 0), Arc(0, 2, 1), Arc(1, 3, 0)]
    for j in range(2, k + 1):
        deg = [0] * len(nodes)
        for a in arcs:
            deg[a.parent] += 1
            deg[a.child] += 1
        new = []
        for cid in range(len(nodes)):
            if deg[cid] > 1:
                new.append((cid, j))
            else:
                p = nodes[cid][1]
                new.extend((cid, m) for m in range(j + 1) if m != p + 1)
        for parent, link in new:
            arcs.append(Arc(parent, len(nodes), link))
            nodes.append((parent, link))
    return nodes, arcs


def _ratios(nodes, deltas) -> list[Fraction]:
    out: list[Fraction] = []
    for parent, link in nodes:
        if parent is None:
            out.append(Fraction(1))
        else:
            out.append(out[parent] * deltas[link] / deltas[link + 1])
    return out


def minimal_n0(k: int, deltas: Sequence[int]) -> int:
    """Smallest root size for which every arc splits into complete bipartite blocks.

    Each arc ``(C, D)`` needs ``|C|`` divisible by ``delta_{l+1}`` (then
    ``|D| = delta_l * |C| / delta_{l+1}``). For power-of-two deltas the
    answer is a power of two.
    """
    deltas = _check_deltas(k, deltas)
    nodes, arcs = _grow(k)
    ratio = _ratios(nodes, deltas)
    need = 1
    for a in arcs:
        need = lcm(need, (ratio[a.parent] / deltas[a.link + 1]).denominator)
    return need


def build_cluster_tree(k: int, deltas: Sequence[int], n0: Optional[int] = None) -> ClusterTree:
    """Cluster tree of depth ``k + 1`` with sizes derived from ``n0``.

    ``n0=None`` picks :func:`minimal_n0`. Raises :class:`NonIntegralSizes`
    if some cluster size is fractional or smaller than a label on one of
    its arcs.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    deltas = _check_deltas(k, deltas)
    nodes, arcs = _grow(k)
    ratio = _ratios(nodes, deltas)
    if n0 is None:
        n0 = minimal_n0(k, deltas)
    if n0 < 1:
        raise NonIntegralSizes("n0 must be positive")
    clusters = []
    for cid, ((parent, link), r) in enumerate(zip(nodes, ratio)):
        level = 0 if parent is None else clusters[parent].level + 1
        size = n0 * r
        if size.denominator != 1:
            raise NonIntegralSizes(f"cluster {cid} would have size {size}")
        clusters.append(Cluster(cid, parent, link, level, r, size=int(size)))
    for a in arcs:
        d_c, d_d = deltas[a.link], deltas[a.link + 1]
        if clusters[a.parent].size < d_d or clusters[a.child].size < d_c:
            raise NonIntegralSizes(f"arc {a.parent}->{a.child} needs larger clusters")
    # depth = distance to the furthest leaf below
    for cid in range(len(clusters) - 1, -1, -1):
        c = clusters[cid]
        if c.parent is not None:
            p = clusters[c.parent]
            p.depth = max(p.depth, c.depth + 1)
    return ClusterTree(k, deltas, clusters, arcs, n0)


# ------------------------------------------------------------- sizes

def node_count_bound(n0: int, delta: float) -> float:
    """``n0 * delta / (delta - 2)``; only meaningful for ``delta > 2``."""
    if delta <= 2:
        raise ValueError("bound needs delta > 2")
    return n0 * delta / (delta - 2)


def boosted_count_bound(k: int, delta: int) -> int:
    return 2 ** (4 * k ** 3 + 4 * k) * delta ** (4 * k ** 2)


# ------------------------------------------------------------- instances

def instantiate_naive(ct: ClusterTree, seed: Optional[int] = None) -> Graph:
    """Realize ``ct`` with disjoint complete bipartite blocks per arc.

    Node ids are assigned cluster by cluster; node labels are cluster ids.
    With a seed, nodes are shuffled inside each cluster before every arc's
    grouping, which yields a different instance with the same degrees.
    """
    if ct.n0 is None:
        raise ValueError("cluster tree has no sizes")
    start = np.cumsum([0] + [c.size for c in ct.clusters])
    members = [list(range(int(start[i]), int(start[i + 1]))) for i in range(len(ct.clusters))]
    rng = None if seed is None else np.random.default_rng(seed)
    edges = []
    for a in ct.arcs:
        d_c, d_d = ct.label(a)
        top, bottom = members[a.parent], members[a.child]
        if len(top) % d_d or len(bottom) % d_c or len(top) // d_d != len(bottom) // d_c:
            raise NonIntegralSizes(f"arc {a.parent}->{a.child} cannot be split into K_{{{d_d},{d_c}}} blocks")
        if rng is not None:
            top = [top[i] for i in rng.permutation(len(top))]
            bottom = [bottom[i] for i in rng.permutation(len(bottom))]
        for g in range(len(top) // d_d):
            for u in top[g * d_d:(g + 1) * d_d]:
                for v in bottom[g * d_c:(g + 1) * d_c]:
                    edges.append((u, v) if u < v else (v, u))
    labels = [c.id for c in ct.clusters for _ in range(c.size)]
    return Graph(int(start[-1]), edges, labels)


def cluster_levels(ct: ClusterTree, g: Graph) -> list[int]:
    """Level parity side (0 or 1) of every node of an instance labeled by cluster."""
    return [ct.clusters[g.label(v)].level % 2 for v in g.nodes()]


def build_hk(gk: Graph) -> Graph:
    """Two copies of ``gk`` plus the matching joining each node to its copy."""
    n = gk.n
    edges = list(gk.edges())
    edges += [(u + n, v + n) for u, v in gk.edges()]
    edges += [(v, v + n) for v in range(n)]
    labels = None if gk.labels is None else list(gk.labels) * 2
    return Graph(2 * n, edges, labels)


# ------------------------------------------------------------- views

class ClusterGraph:
    """Clusters with per-direction link multiplicities.

    ``links[X]`` lists ``(Z, m)``: every node of ``X`` has ``m`` neighbors
    in cluster ``Z``.
    """

    def __init__(self, links: list[list[tuple[int, int]]]):
        self.links = links
        self._memo: dict = {}

    @property
    def size(self) -> int:
        return len(self.links)

    def doubled(self) -> "ClusterGraph":
        """Two copies joined by a multiplicity-1 link between counterparts."""
        n = self.size
        links = [list(ls) for ls in self.links] + [[(z + n, m) for z, m in ls] for ls in self.links]
        for x in range(n):
            links[x].append((x + n, 1))
            links[x + n].append((x, 1))
        return ClusterGraph(links)

    def unroll(self, start: int, entry: Optional[int], depth: int, labeled: bool = False) -> ViewTree:
        key = (start, entry, depth, labeled)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        label = start if labeled else None
        if depth == 0:
            out = ViewTree(label)
        else:
            kids = []
            for z, m in self.links[start]:
                mult = m - 1 if z == entry else m
                if mult:
                    kids.append((self.unroll(z, start, depth - 1, labeled), mult))
            out = ViewTree(label, kids)
        self._memo[key] = out
        return out


def unroll_cluster_view(ct, start: int, entry: Optional[int], depth: int, labeled: bool = False) -> ViewTree:
    """View of a node in cluster ``start`` unrolled to ``depth`` at cluster level.

    ``entry`` is the cluster the walk arrived from (``None`` at the root);
    one neighbor toward ``entry`` is the parent edge and is left out.
    ``ct`` may be a :class:`ClusterTree` or a :class:`ClusterGraph`.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if isinstance(ct, ClusterTree):
        if ct._adj is None:
            ct._adj = ct.cluster_graph()
        cg = ct._adj
    else:
        cg = ct
    return cg.unroll(start, entry, depth, labeled)

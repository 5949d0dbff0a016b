"""Named graph families used by the CLI and the experiment runner."""

from __future__ import annotations

import math

import numpy as np

from .graph import Graph, is_connected


def star(n: int) -> Graph:
    """``K_{1,n-1}`` with center 0."""
    return Graph(n, [(0, i) for i in range(1, n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """Sides ``0..a-1`` and ``a..a+b-1``."""
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def k_m_sqrt_m(m: int) -> Graph:
    """``K_{m, sqrt(m)}``; ``m`` must be a perfect square."""
    s = math.isqrt(m)
    if s * s != m:
        raise ValueError("m must be a perfect square")
    return complete_bipartite(m, s)


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    keep = rng.random(len(iu[0])) < p
    return Graph(n, zip(iu[0][keep].tolist(), iu[1][keep].tolist()))


def connected_gnp(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p) plus a random spanning tree, so the result is connected."""
    rng = np.random.default_rng([seed, 1])
    base = gnp(n, p, seed)
    edges = set(base.edges())
    order = rng.permutation(n).tolist()
    for i in range(1, n):
        u, v = order[i], order[int(rng.integers(0, i))]
        edges.add((min(u, v), max(u, v)))
    g = Graph(n, sorted(edges))
    assert n == 0 or is_connected(g)
    return g


FAMILIES = {
    "star": (star, ("n",)),
    "path": (path, ("n",)),
    "cycle": (cycle, ("n",)),
    "complete": (complete, ("n",)),
    "Kab": (complete_bipartite, ("a", "b")),
    "Kmm": (k_m_sqrt_m, ("m",)),
    "gnp": (gnp, ("n", "p", "seed")),
    "connected_gnp": (connected_gnp, ("n", "p", "seed")),
}


def make_graph(family: str, **params) -> Graph:
    try:
        fn, names = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    missing = [x for x in names if x not in params and x != "seed"]
    if missing:
        raise ValueError(f"family {family} needs parameters {missing}")
    return fn(**{x: params[x] for x in names if x in params})

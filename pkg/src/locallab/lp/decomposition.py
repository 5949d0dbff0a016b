"""Randomized low-diameter clustering LS(p, R).

Every node draws a radius ``r`` = number of successes in a run of
Bernoulli(p) trials, stopped at the first failure and capped at ``R``.
After ``R`` flooding rounds each node ``u`` knows every node within
distance ``R`` together with its radius. Then

* the leader of ``u`` is the highest-id node ``w`` with ``d(u, w) <= r_w``;
* ``u`` is selected iff ``d(u, leader) < r_leader``.

Selected nodes lie strictly inside their leader's ball, so any neighbor of
a selected node is also covered by that leader and cannot have a larger
one; selected neighbors therefore share leaders. A node is selected with
probability at least ``p * (1 - p**R) ** (n - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..engine import run_protocol
from ..graph import Graph, bfs_distances


@dataclass
class Decomposition:
    selected: list[int]
    leader: dict[int, int]
    p: float
    R: int
    radii: list[int] = field(default_factory=list)

    def clusters(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for u in self.selected:
            out.setdefault(self.leader[u], []).append(u)
        return out


def draw_radii(rng: np.random.Generator, p: float, R: int, count: int) -> list[int]:
    """``count`` truncated geometric radii; each uses exactly ``R`` uniforms."""
    trials = rng.random((count, R)) < p
    out = []
    for row in trials:
        r = 0
        while r < R and row[r]:
            r += 1
        out.append(r)
    return out


class LSProtocol:
    """Runs ``instances`` independent copies of LS(p, R) in ``R`` rounds."""

    def __init__(self, p: float, R: int, instances: int = 1):
        if not 0 < p < 1:
            raise ValueError("p must lie in (0, 1)")
        if R < 1:
            raise ValueError("R must be at least 1")
        self.p, self.R, self.instances = p, R, instances

    def init(self, node, neighbors, label, rng):
        radii = draw_radii(rng, self.p, self.R, self.instances)
        # known: id -> (distance, radii); fresh: entries learned last round
        known = {node: (0, radii)}
        return {"id": node, "nbrs": neighbors, "known": known, "fresh": dict(known)}

    def step(self, st, rnd, inbox):
        fresh = {}
        for msg in inbox.values():
            for w, (d, radii) in msg.items():
                if w not in st["known"]:
                    st["known"][w] = (d + 1, radii)
                    fresh[w] = (d + 1, radii)
        out_msg = st["fresh"] if rnd == 1 else fresh
        if rnd > 1:
            st["fresh"] = fresh
        return st, {w: out_msg for w in st["nbrs"]}

    def finalize(self, st, inbox):
        for msg in inbox.values():
            for w, (d, radii) in msg.items():
                if w not in st["known"]:
                    st["known"][w] = (d + 1, radii)
        known = st["known"]
        result = []
        for t in range(self.instances):
            lead = max((w for w, (d, radii) in known.items() if d <= radii[t]), default=None)
            # the node itself always qualifies (distance 0 <= radius)
            d, radii = known[lead]
            result.append((lead, d < radii[t]))
        return {"choices": result, "radii": known[st["id"]][1]}


def ls_decompose_many(g: Graph, p: float, R: int, instances: int, seed: int = 0,
                      workers: int = 1) -> tuple[list[Decomposition], int]:
    """Run ``instances`` decompositions in one engine execution.

    Returns the decompositions and the number of engine rounds used.
    """
    proto = LSProtocol(p, R, instances)
    tr = run_protocol(g, proto, R, seed, workers=workers)
    decs = []
    for t in range(instances):
        sel, lead = [], {}
        for v, out in enumerate(tr.outputs):
            leader, inside = out["choices"][t]
            if inside:
                sel.append(v)
                lead[v] = leader
        decs.append(Decomposition(sel, lead, p, R, [out["radii"][t] for out in tr.outputs]))
    return decs, tr.rounds


def ls_decompose(g: Graph, p: float, R: int, seed: int = 0) -> Decomposition:
    return ls_decompose_many(g, p, R, 1, seed)[0][0]


def selection_bound(p: float, R: int, n: int) -> float:
    return p * (1 - p ** R) ** (n - 1)


def check_decomposition(g: Graph, dec: Decomposition) -> list[str]:
    """Violations of the distance and separation properties (empty if none)."""
    problems = []
    sel = set(dec.selected)
    for u in dec.selected:
        d = bfs_distances(g, u, cutoff=dec.R).get(dec.leader[u])
        if d is None or d > dec.R:
            problems.append(f"node {u} farther than R from its leader {dec.leader[u]}")
    for u, v in g.edges():
        if u in sel and v in sel and dec.leader[u] != dec.leader[v]:
            problems.append(f"adjacent nodes {u}, {v} have different leaders")
    return problems

"""Synchronous LOCAL-model executor.

A protocol is any object providing

``init(node, neighbors, label, rng) -> state``
    called once per node before the first round;
``step(state, round, inbox) -> (state, outbox)``
    called once per node per round. ``inbox`` maps neighbor id to the
    message that neighbor sent in the previous round (empty in round 1);
    ``outbox`` maps neighbor id to the message sent this round;
``finalize(state, inbox) -> output``
    called after the last round with the messages sent in that round.

Messages are arbitrary Python objects (no size limit). All round-``t``
messages are delivered before any round-``t+1`` computation.

Per-node randomness: node ``v`` receives ``numpy.random.Generator(PCG64(
SeedSequence([seed, v])))``. The stream depends only on ``(seed, v)``, so
adding nodes never shifts another node's randomness.
"""

from __future__ import annotations

import pickle
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Protocol

import numpy as np

from .errors import ProtocolFault
from .graph import Graph
from .viewtree import ViewTree


class RoundProtocol(Protocol):
    def init(self, node: int, neighbors: tuple[int, ...], label: Optional[int], rng: np.random.Generator) -> Any: ...

    def step(self, state: Any, rnd: int, inbox: dict[int, Any]) -> tuple[Any, dict[int, Any]]: ...

    def finalize(self, state: Any, inbox: dict[int, Any]) -> Any: ...


def node_rng(seed: int, node: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, node])))


def default_message_size(msg: Any) -> int:
    if isinstance(msg, ViewTree):
        return len(msg.key)
    return len(pickle.dumps(msg, protocol=4))


@dataclass
class RunTranscript:
    outputs: list
    rounds: int
    message_counts: list[int] = field(default_factory=list)
    message_bytes: list[int] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "rounds": self.rounds,
            "messages": sum(self.message_counts),
            "bytes": sum(self.message_bytes),
        }


def run_protocol(
    g: Graph,
    proto: RoundProtocol,
    k: int,
    seed: int = 0,
    *,
    workers: int = 1,
    ids: Optional[list[int]] = None,
    message_size: Callable[[Any], int] = default_message_size,
) -> RunTranscript:
    """Run ``proto`` on every node of ``g`` for exactly ``k`` rounds.

    ``ids`` optionally assigns the identifier each node sees for itself and
    its neighbors (default: node ids). ``workers > 1`` evaluates node steps
    of a round on a thread pool; the result is identical to the sequential
    run because steps only see their own state and inbox.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = g.n
    adj = g.adjacency
    if ids is None:
        ident = list(range(n))
    else:
        if len(ids) != n or len(set(ids)) != n:
            raise ValueError("ids must be unique, one per node")
        ident = list(ids)
    back = {ident[v]: v for v in range(n)}
    nbr_ids = [tuple(ident[w] for w in adj[v]) for v in range(n)]
    nbr_sets = [frozenset(x) for x in nbr_ids]

    states = [
        proto.init(ident[v], nbr_ids[v], g.label(v), node_rng(seed, ident[v]))
        for v in range(n)
    ]
    inboxes: list[dict] = [{} for _ in range(n)]
    counts: list[int] = []
    sizes: list[int] = []

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for rnd in range(1, k + 1):
            if pool is None:
                results = [proto.step(states[v], rnd, inboxes[v]) for v in range(n)]
            else:
                results = list(pool.map(lambda v: proto.step(states[v], rnd, inboxes[v]), range(n)))
            nxt: list[dict] = [{} for _ in range(n)]
            count = 0
            size = 0
            for v, (state, outbox) in enumerate(results):
                states[v] = state
                if not outbox:
                    continue
                for target, msg in outbox.items():
                    if target not in nbr_sets[v]:
                        raise ProtocolFault(f"node {ident[v]} sent to non-neighbor {target} in round {rnd}")
                    nxt[back[target]][ident[v]] = msg
                    count += 1
                    size += message_size(msg)
            inboxes = nxt
            counts.append(count)
            sizes.append(size)
        if pool is None:
            outputs = [proto.finalize(states[v], inboxes[v]) for v in range(n)]
        else:
            outputs = list(pool.map(lambda v: proto.finalize(states[v], inboxes[v]), range(n)))
    finally:
        if pool is not None:
            pool.shutdown()
    return RunTranscript(outputs=outputs, rounds=k, message_counts=counts, message_bytes=sizes)


def random_ids(n: int, seed: int) -> list[int]:
    """Identifiers ``0..n-1`` assigned uniformly at random."""
    return [int(x) for x in np.random.default_rng(seed).permutation(n)]


# ------------------------------------------------------------ basic protocols

class FloodMax:
    """Each node learns the largest identifier within its k-hop neighborhood."""

    def init(self, node, neighbors, label, rng):
        return {"best": node, "nbrs": neighbors}

    def step(self, state, rnd, inbox):
        best = max([state["best"], *inbox.values()])
        state = {"best": best, "nbrs": state["nbrs"]}
        return state, {w: best for w in state["nbrs"]}

    def finalize(self, state, inbox):
        return max([state["best"], *inbox.values()])


class Gather:
    """Collect the unrolled k-hop view tree.

    The round-``t`` message from ``w`` to ``v`` is ``w``'s depth ``t-1``
    tree with the branch through ``v`` left out.
    """

    def __init__(self, labeled: bool = False):
        self.labeled = labeled

    def init(self, node, neighbors, label, rng):
        return (node, neighbors, label if self.labeled else None)

    def step(self, state, rnd, inbox):
        _, nbrs, label = state
        if rnd == 1:
            t = ViewTree(label)
            return state, {w: t for w in nbrs}
        out = {w: ViewTree(label, [inbox[u] for u in nbrs if u != w]) for w in nbrs}
        return state, out

    def finalize(self, state, inbox):
        _, nbrs, label = state
        return ViewTree(label, [inbox[u] for u in nbrs if u in inbox])

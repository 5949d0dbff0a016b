"""k-iteration distributed vertex cover with a simultaneous fractional matching.

Each iteration ``l = k-1, ..., 0`` takes three communication rounds:

1. every node announces its dynamic degree (number of uncovered incident
   edges);
2. a node joins when its dynamic degree ``d`` satisfies
   ``d >= D ** (l / (l + 1))`` with ``D`` the largest dynamic degree among
   its neighbors (tested exactly as ``d ** (l + 1) >= D ** l``; ``d = 0``
   never joins) and spreads ``1/d`` over its uncovered edges;
3. a node still outside the cover whose incident dual sum ``Y`` reached 1
   joins as well and scales its incident duals by ``1 + 1/Y``.

One final round exchanges ``Y`` so each edge dual can be divided by the
larger ``Y`` of its endpoints. Duals are exact fractions throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import run_protocol
from .errors import InvariantViolation
from .graph import Graph

Edge = tuple[int, int]


def joins(d: int, d_max: int, ell: int) -> bool:
    """Threshold test ``d >= d_max ** (ell/(ell+1))`` in integers (0**0 == 1)."""
    if d == 0:
        return False
    return d ** (ell + 1) >= d_max ** ell


def within_lemma16(d: int, delta: int, ell: int, k: int) -> bool:
    """``d <= delta ** ((ell+1)/k)``."""
    return d ** k <= delta ** (ell + 1)


def within_alpha(value: Fraction, delta: int, k: int) -> bool:
    """``value <= 3 + delta ** (1/k)`` exactly."""
    if value <= 3:
        return True
    return (Fraction(value) - 3) ** k <= delta


def alpha(delta: int, k: int) -> float:
    return 3 + delta ** (1 / k)


@dataclass
class MvcFmmResult:
    cover: list[int]
    edge_duals: dict[Edge, Fraction]
    raw_duals: dict[Edge, Fraction]
    dual_sums: list[Fraction]
    dynamic_degrees: list[list[int]]
    k: int
    max_degree: int
    rounds: int
    assertion_log: list[str] = field(default_factory=list)

    @property
    def dual_value(self) -> Fraction:
        return sum(self.edge_duals.values(), Fraction(0))

    @property
    def ratio_bound(self) -> float:
        return alpha(self.max_degree, self.k)


class MvcFmmProtocol:
    """Per-node code; rounds ``3 * k + 1``."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.k = k

    @property
    def rounds(self) -> int:
        return 3 * self.k + 1

    def init(self, node, neighbors, label, rng):
        return {
            "id": node,
            "nbrs": neighbors,
            "x": 0,
            "y": {w: Fraction(0) for w in neighbors},
            "covered": {w: False for w in neighbors},
            "deg": 0,
            "contrib": Fraction(0),
            "joined6": False,
            "dyn": [],
            "Y": Fraction(0),
        }

    def _absorb_line11(self, st, inbox):
        for w, (joined, y_new) in inbox.items():
            if joined:
                st["covered"][w] = True
            if y_new is not None:
                st["y"][w] = y_new

    def step(self, st, rnd, inbox):
        k = self.k
        nbrs = st["nbrs"]
        if rnd == 3 * k + 1:
            self._absorb_line11(st, inbox)
            st["Y"] = sum(st["y"].values(), Fraction(0))
            return st, {w: st["Y"] for w in nbrs}
        it, phase = divmod(rnd - 1, 3)
        ell = k - 1 - it
        if phase == 0:
            self._absorb_line11(st, inbox)
            st["deg"] = sum(1 for w in nbrs if not st["covered"][w])
            st["dyn"].append(st["deg"])
            return st, {w: st["deg"] for w in nbrs}
        if phase == 1:
            d = st["deg"]
            d_max = max(inbox.values(), default=0)
            out = {}
            st["joined6"] = joins(d, d_max, ell)
            if st["joined6"]:
                st["x"] = 1
                share = Fraction(1, d)
                for w in nbrs:
                    if st["covered"][w]:
                        out[w] = (True, Fraction(0))
                    else:
                        st["y"][w] += share
                        st["covered"][w] = True
                        out[w] = (True, share)
            else:
                out = {w: (False, Fraction(0)) for w in nbrs}
            return st, out
        # phase 2
        for w, (joined, share) in inbox.items():
            st["y"][w] += share
            if joined:
                st["covered"][w] = True
        Y = sum(st["y"].values(), Fraction(0))
        if st["x"] == 0 and Y >= 1:
            st["x"] = 1
            scale = 1 + 1 / Y
            for w in nbrs:
                st["y"][w] *= scale
                st["covered"][w] = True
            return st, {w: (True, st["y"][w]) for w in nbrs}
        return st, {w: (False, None) for w in nbrs}

    def finalize(self, st, inbox):
        Y = st["Y"]
        norm = {}
        for w, yw in st["y"].items():
            denom = max(Y, inbox.get(w, Fraction(0)))
            norm[w] = yw / denom if yw else Fraction(0)
        return {"x": st["x"], "y": dict(st["y"]), "y_norm": norm, "Y": Y, "dyn": list(st["dyn"])}


def _check(result: MvcFmmResult, g: Graph, strict: bool) -> None:
    k, delta = result.k, result.max_degree
    log = result.assertion_log
    for it, row in enumerate(zip(*result.dynamic_degrees) if g.n else []):
        ell = k - 1 - it
        bad = [v for v, d in enumerate(row) if not within_lemma16(d, delta, ell, k)]
        if bad:
            log.append(f"dynamic degree bound violated at iteration {it} for nodes {bad[:5]}")
    bad = [v for v, Y in enumerate(result.dual_sums) if not within_alpha(Y, delta, k)]
    if bad:
        log.append(f"dual sum bound 3+Delta^(1/k) violated at nodes {bad[:5]}")
    cover = set(result.cover)
    if not all(u in cover or v in cover for u, v in g.edges()):
        log.append("output is not a vertex cover")
    load = [Fraction(0)] * g.n
    for (u, v), y in result.edge_duals.items():
        load[u] += y
        load[v] += y
    if any(x > 1 for x in load):
        log.append("normalized duals are not a fractional matching")
    if sum(result.raw_duals.values(), Fraction(0)) != len(result.cover):
        log.append("primal/dual accounting mismatch")
    if strict and log:
        raise InvariantViolation("; ".join(log))


def mvc_fmm(g: Graph, k: int, *, seed: int = 0, workers: int = 1, strict: bool = True) -> MvcFmmResult:
    """Run the protocol on the LOCAL engine and collect the result.

    With ``strict`` any failed invariant raises :class:`InvariantViolation`;
    otherwise failures are only recorded in ``assertion_log``.
    """
    proto = MvcFmmProtocol(k)
    tr = run_protocol(g, proto, proto.rounds, seed, workers=workers)
    out = tr.outputs
    raw, norm = {}, {}
    for u, v in g.edges():
        if out[u]["y"][v] != out[v]["y"][u] or out[u]["y_norm"][v] != out[v]["y_norm"][u]:
            raise InvariantViolation(f"endpoints disagree on dual of edge ({u}, {v})")
        raw[(u, v)] = out[u]["y"][v]
        norm[(u, v)] = out[u]["y_norm"][v]
    result = MvcFmmResult(
        cover=[v for v in g.nodes() if out[v]["x"] == 1],
        edge_duals=norm,
        raw_duals=raw,
        dual_sums=[out[v]["Y"] for v in g.nodes()],
        dynamic_degrees=[out[v]["dyn"] for v in g.nodes()],
        k=k,
        max_degree=g.max_degree,
        rounds=tr.rounds,
    )
    _check(result, g, strict)
    return result


def mvc_fmm_reference(g: Graph, k: int) -> tuple[list[int], dict[Edge, Fraction]]:
    """Centralized re-statement of the same loop, used as a cross-check."""
    n = g.n
    edges = list(g.edges())
    x = [0] * n
    y = {e: Fraction(0) for e in edges}
    inc = [[] for _ in range(n)]
    for e in edges:
        inc[e[0]].append(e)
        inc[e[1]].append(e)

    def covered(e):
        return x[e[0]] == 1 or x[e[1]] == 1

    for ell in range(k - 1, -1, -1):
        deg = [sum(1 for e in inc[v] if not covered(e)) for v in range(n)]
        dmax = [max((deg[w] for w in g.neighbors(v)), default=0) for v in range(n)]
        joining = [v for v in range(n) if joins(deg[v], dmax[v], ell)]
        uncovered_now = {e for e in edges if not covered(e)}
        for v in joining:
            for e in inc[v]:
                if e in uncovered_now:
                    y[e] += Fraction(1, deg[v])
        for v in joining:
            x[v] = 1
        Y = [sum((y[e] for e in inc[v]), Fraction(0)) for v in range(n)]
        late = [v for v in range(n) if x[v] == 0 and Y[v] >= 1]
        for v in late:
            for e in inc[v]:
                y[e] *= 1 + 1 / Y[v]
        for v in late:
            x[v] = 1
    Y = [sum((y[e] for e in inc[v]), Fraction(0)) for v in range(n)]
    norm = {e: (y[e] / max(Y[e[0]], Y[e[1]]) if y[e] else Fraction(0)) for e in edges}
    return [v for v in range(n) if x[v]], norm

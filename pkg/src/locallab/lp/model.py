"""Covering/packing LP pairs and their network graph.

The primal (covering) side is ``min c.x  s.t.  A x >= b, x >= 0`` and the
dual (packing) side is ``max b.y  s.t.  A^T y <= c, y >= 0``. ``A`` has one
row per dual variable and one column per primal variable and is stored
sparsely, row by row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..graph import Graph, distance_power_graph

COVERING = "covering"
PACKING = "packing"


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12)
    return Fraction(v)


@dataclass(frozen=True)
class CanonicalLP:
    c: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]
    kind: str = COVERING

    @classmethod
    def build(
        cls,
        c: Sequence,
        b: Sequence,
        entries: Iterable[tuple[int, int, object]],
        kind: str = COVERING,
        check: bool = True,
    ) -> "CanonicalLP":
        """Construct from ``(row, col, value)`` triples; zero entries are dropped."""
        c_ = tuple(as_fraction(v) for v in c)
        b_ = tuple(as_fraction(v) for v in b)
        acc: list[dict[int, Fraction]] = [{} for _ in b_]
        for j, i, v in entries:
            if not (0 <= j < len(b_) and 0 <= i < len(c_)):
                raise ValueError(f"entry ({j}, {i}) out of range")
            v = as_fraction(v)
            if v:
                acc[j][i] = acc[j].get(i, Fraction(0)) + v
        rows = tuple(tuple(sorted((i, v) for i, v in r.items() if v)) for r in acc)
        lp = cls(c_, b_, rows, kind)
        if check:
            lp.validate()
        return lp

    @property
    def n_primal(self) -> int:
        return len(self.c)

    @property
    def n_dual(self) -> int:
        return len(self.b)

    def validate(self) -> None:
        if self.kind not in (COVERING, PACKING):
            raise ValueError(f"unknown LP kind {self.kind!r}")
        if any(v < 0 for v in self.c) or any(v < 0 for v in self.b):
            raise ValueError("objective and bound vectors must be nonnegative")
        seen = set()
        for j, row in enumerate(self.rows):
            if not row:
                raise ValueError(f"row {j} is all zero")
            for i, v in row:
                if v < 0:
                    raise ValueError(f"negative coefficient at ({j}, {i})")
                seen.add(i)
        missing = set(range(self.n_primal)) - seen
        if missing:
            raise ValueError(f"column {min(missing)} is all zero")

    def columns(self) -> list[list[tuple[int, Fraction]]]:
        cols: list[list[tuple[int, Fraction]]] = [[] for _ in self.c]
        for j, row in enumerate(self.rows):
            for i, v in row:
                cols[i].append((j, v))
        return cols

    def entries(self) -> list[tuple[int, int, Fraction]]:
        return [(j, i, v) for j, row in enumerate(self.rows) for i, v in row]

    # feasibility / objective helpers ---------------------------------------
    def row_activity(self, x: Sequence) -> list[Fraction]:
        return [sum((v * x[i] for i, v in row), Fraction(0)) for row in self.rows]

    def column_load(self, y: Sequence) -> list[Fraction]:
        load = [Fraction(0)] * self.n_primal
        for j, row in enumerate(self.rows):
            if y[j]:
                for i, v in row:
                    load[i] += v * y[j]
        return load

    def primal_feasible(self, x: Sequence) -> bool:
        if any(v < 0 for v in x):
            return False
        return all(a >= b for a, b in zip(self.row_activity(x), self.b))

    def dual_feasible(self, y: Sequence) -> bool:
        if any(v < 0 for v in y):
            return False
        return all(a <= c for a, c in zip(self.column_load(y), self.c))

    def primal_value(self, x: Sequence) -> Fraction:
        return sum((ci * xi for ci, xi in zip(self.c, x)), Fraction(0))

    def dual_value(self, y: Sequence) -> Fraction:
        return sum((bj * yj for bj, yj in zip(self.b, y)), Fraction(0))

    def is_zero_one(self) -> bool:
        return all(v == 1 for row in self.rows for _, v in row)

    @property
    def primal_degree(self) -> int:
        """Largest number of rows a primal variable appears in."""
        return max((len(col) for col in self.columns()), default=0)

    @property
    def dual_degree(self) -> int:
        """Largest number of primal variables in one row."""
        return max((len(row) for row in self.rows), default=0)

    def restrict(self, rows: Iterable[int]) -> tuple["CanonicalLP", list[int], list[int]]:
        """Sub-LP on the given rows and the columns they touch.

        Returns ``(sub, row_ids, col_ids)`` mapping local to global indices.
        """
        row_ids = sorted(set(rows))
        col_ids = sorted({i for j in row_ids for i, _ in self.rows[j]})
        pos = {i: t for t, i in enumerate(col_ids)}
        sub = CanonicalLP(
            tuple(self.c[i] for i in col_ids),
            tuple(self.b[j] for j in row_ids),
            tuple(tuple((pos[i], v) for i, v in self.rows[j]) for j in row_ids),
            self.kind,
        )
        return sub, row_ids, col_ids


def _frac_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def lp_to_dict(lp: CanonicalLP) -> dict:
    return {
        "kind": lp.kind,
        "c": [_frac_str(v) for v in lp.c],
        "b": [_frac_str(v) for v in lp.b],
        "A": [[j, i, _frac_str(v)] for j, i, v in lp.entries()],
    }


def lp_from_dict(doc: Mapping) -> CanonicalLP:
    return CanonicalLP.build(
        [Fraction(str(v)) for v in doc["c"]],
        [Fraction(str(v)) for v in doc["b"]],
        [(int(j), int(i), Fraction(str(v))) for j, i, v in doc["A"]],
        kind=doc.get("kind", COVERING),
    )


def read_lp(path) -> CanonicalLP:
    with open(path) as fh:
        return lp_from_dict(json.load(fh))


def write_lp(lp: CanonicalLP, path) -> None:
    with open(path, "w") as fh:
        json.dump(lp_to_dict(lp), fh, indent=1)
        fh.write("\n")


# ------------------------------------------------------------- graph LPs

def vertex_cover_lp(g: Graph) -> CanonicalLP:
    """Fractional vertex cover; its packing dual is fractional matching."""
    edges = list(g.edges())
    return CanonicalLP.build(
        [1] * g.n, [1] * len(edges),
        [(j, u, 1) for j, e in enumerate(edges) for u in e],
        check=False,
    )


def dominating_set_lp(g: Graph) -> CanonicalLP:
    """One row per closed neighborhood."""
    return CanonicalLP.build(
        [1] * g.n, [1] * g.n,
        [(v, u, 1) for v in g.nodes() for u in (v, *g.neighbors(v))],
    )


def random_covering_lp(n_primal: int, n_dual: int, density: float = 0.2, seed: int = 0,
                       max_coef: int = 3, zero_one: bool = False) -> CanonicalLP:
    """Random covering LP with small positive integer data.

    Every row gets at least one entry and every column appears somewhere,
    so the LP is feasible and bounded.
    """
    if n_primal < 1 or n_dual < 1:
        raise ValueError("need at least one variable on each side")
    rng = np.random.default_rng(seed)
    mask = rng.random((n_dual, n_primal)) < density
    for j in range(n_dual):
        if not mask[j].any():
            mask[j, rng.integers(n_primal)] = True
    for i in range(n_primal):
        if not mask[:, i].any():
            mask[rng.integers(n_dual), i] = True
    hi = 2 if zero_one else max_coef + 1
    coef = rng.integers(1, hi, size=mask.shape)
    c = rng.integers(1, max_coef + 1, size=n_primal).tolist()
    b = rng.integers(1, (2 if zero_one else max_coef + 1), size=n_dual).tolist()
    entries = [(int(j), int(i), int(coef[j, i])) for j, i in zip(*np.nonzero(mask))]
    return CanonicalLP.build(c, b, entries)


# ------------------------------------------------------------- network

@dataclass(frozen=True)
class LpNetwork:
    """Bipartite network: nodes ``0..n_p-1`` are primal, ``n_p..n_p+n_d-1`` dual."""

    graph: Graph
    n_primal: int
    n_dual: int

    def primal_node(self, i: int) -> int:
        return i

    def dual_node(self, j: int) -> int:
        return self.n_primal + j

    def decomposition_graph(self) -> Graph:
        """Dual nodes joined when within distance 4 in the network."""
        return dual_conflict_graph(self)


def build_lp_network(lp: CanonicalLP) -> LpNetwork:
    n_p = lp.n_primal
    edges = [(i, n_p + j) for j, row in enumerate(lp.rows) for i, _ in row]
    labels = [0] * n_p + [1] * lp.n_dual
    g = Graph(n_p + lp.n_dual, edges, labels)
    return LpNetwork(g, n_p, lp.n_dual)


def dual_conflict_graph(net: LpNetwork) -> Graph:
    if net.n_dual == 0:
        return Graph(0, [])
    sub, _ = distance_power_graph(net.graph, range(net.n_primal, net.n_primal + net.n_dual), 4)
    return sub

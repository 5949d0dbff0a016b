"""Reading and writing graphs.

Text format: first line ``n m``, then ``m`` lines ``u v`` with ``u < v``.
Node labels live in an optional side file with one ``v label`` pair per
line. The JSON variant is ``{"n": ..., "edges": [[u, v], ...],
"labels": [...] | null}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .errors import GraphError
from .graph import Graph


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def format_labels(g: Graph) -> str:
    if g.labels is None:
        return ""
    return "".join(f"{v} {lab}\n" for v, lab in enumerate(g.labels))


def parse_graph(text: str, label_text: Optional[str] = None) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("missing 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for row in body:
        if len(row) != 2:
            raise GraphError(f"bad edge line: {' '.join(row)}")
        u, v = int(row[0]), int(row[1])
        if u >= v:
            raise GraphError(f"edge lines must satisfy u < v: {u} {v}")
        edges.append((u, v))
    labels = None
    if label_text is not None:
        labels = [0] * n
        seen = set()
        for ln in label_text.splitlines():
            if not ln.strip():
                continue
            v, lab = (int(x) for x in ln.split())
            if not 0 <= v < n:
                raise GraphError(f"label for unknown node {v}")
            labels[v] = lab
            seen.add(v)
        if len(seen) != n:
            raise GraphError("label file must cover every node")
    return Graph(n, edges, labels)


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()],
            "labels": None if g.labels is None else list(g.labels)}


def graph_from_dict(doc: dict) -> Graph:
    return Graph(int(doc["n"]), [tuple(e) for e in doc["edges"]], doc.get("labels"))


def read_graph(path, labels_path=None) -> Graph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return graph_from_dict(json.loads(text))
    label_text = Path(labels_path).read_text() if labels_path else None
    return parse_graph(text, label_text)


def write_graph(g: Graph, path, labels_path=None) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(graph_to_dict(g)) + "\n")
        return
    path.write_text(format_graph(g))
    if labels_path is not None and g.labels is not None:
        Path(labels_path).write_text(format_labels(g))

"""Experiment runner: instances x algorithms x seeds -> CSV report.

Configs are YAML or JSON documents validated against :data:`CONFIG_SCHEMA`
before any work starts. Besides the full form (``instances``,
``algorithms``, ``seeds``) a single-row shorthand is accepted::

    {family: star, n: 9, algo: mvc, k: 2, seeds: [1]}
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import jsonschema
import yaml

from .cds import mcds_pipeline
from .errors import BudgetExceeded, InvariantViolation, LocalLabError
from .families import FAMILIES, make_graph
from .graph import Graph, is_connected
from .graphio import read_graph
from .lp.mds import mds_run
from .lp.model import vertex_cover_lp
from .lp.solver import solve_lp_local, theorem_params
from .mvc import alpha, mvc_fmm, within_alpha
from .oracles.exact import exact_lp, exact_solve

ALGORITHMS = ("mvc", "lp", "mds", "mcds")

_instance = {
    "type": "object",
    "properties": {
        "family": {"enum": sorted(FAMILIES) + ["file"]},
        "id": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 1},
        "a": {"type": "integer", "minimum": 1},
        "b": {"type": "integer", "minimum": 1},
        "p": {"type": "number", "minimum": 0, "maximum": 1},
        "seed": {"type": "integer"},
        "path": {"type": "string"},
        "labels": {"type": "string"},
    },
    "required": ["family"],
    "additionalProperties": False,
}

_lp_params = {
    "alpha": {"type": "number", "exclusiveMinimum": 1},
    "beta": {"type": "number", "exclusiveMinimum": 0},
    "eps": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
    "R": {"type": "integer", "minimum": 1},
    "ell": {"type": "integer", "minimum": 1},
    "p": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
    "lambda": {"type": "number", "minimum": 3.7320508075688772},
}

_algorithm = {
    "type": "object",
    "properties": {"name": {"enum": list(ALGORITHMS)}, "k": {"type": "integer", "minimum": 1}, **_lp_params},
    "required": ["name"],
    "additionalProperties": False,
}

_common = {
    "seeds": {"type": "array", "items": {"type": "integer"}},
    "oracle": {"type": "boolean"},
    "oracle_budget": {"type": "integer", "minimum": 1},
    "record_time": {"type": "boolean"},
    "output": {
        "type": "object",
        "properties": {"csv": {"type": "string"}, "summary": {"type": "string"}},
        "additionalProperties": False,
    },
}

CONFIG_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "instances": {"type": "array", "items": _instance},
                "algorithms": {"type": "array", "items": _algorithm, "minItems": 1},
                **_common,
            },
            "required": ["instances", "algorithms", "seeds"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                **{k: v for k, v in _instance["properties"].items() if k not in ("p", "seed")},
                "graph_p": {"type": "number", "minimum": 0, "maximum": 1},
                "graph_seed": {"type": "integer"},
                "algo": {"enum": list(ALGORITHMS)},
                "k": {"type": "integer", "minimum": 1},
                **{k: v for k, v in _lp_params.items()},
                **_common,
            },
            "required": ["family", "algo"],
            "additionalProperties": False,
        },
    ]
}

COLUMNS = (
    "instance", "n", "Delta", "k", "algorithm", "value", "oracle_value",
    "ratio", "ratio_decimal", "bound", "bound_ok", "seed", "wall_time", "error",
)


def load_config(path) -> dict:
    text = Path(path).read_text()
    doc = json.loads(text) if str(path).endswith(".json") else yaml.safe_load(text)
    return normalize_config(doc)


def normalize_config(doc) -> dict:
    """Validate and expand the shorthand form."""
    if not isinstance(doc, dict):
        raise jsonschema.ValidationError("config must be a mapping")
    # validate against the matching branch so errors name the offending key
    branch = CONFIG_SCHEMA["oneOf"][0 if "instances" in doc else 1]
    jsonschema.validate(doc, branch)
    if "instances" in doc:
        return dict(doc)
    inst = {k: doc[k] for k in _instance["properties"] if k in doc and k not in ("p", "seed")}
    if "graph_p" in doc:
        inst["p"] = doc["graph_p"]
    if "graph_seed" in doc:
        inst["seed"] = doc["graph_seed"]
    algo = {"name": doc["algo"]}
    for key in ("k", *_lp_params):
        if key in doc:
            algo[key] = doc[key]
    out = {"instances": [inst], "algorithms": [algo], "seeds": doc.get("seeds", [0])}
    for key in _common:
        if key in doc and key != "seeds":
            out[key] = doc[key]
    return out


@dataclass
class Report:
    rows: list[dict]
    violations: int = 0
    errors: int = 0
    aborted: bool = False
    summary: dict = field(default_factory=dict)

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow({c: _cell(row.get(c)) for c in COLUMNS})
        return buf.getvalue()

    @property
    def exit_status(self) -> int:
        return 1 if self.violations else 0


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _instance_graph(inst: dict) -> tuple[str, Graph]:
    fam = inst["family"]
    params = {k: v for k, v in inst.items() if k not in ("family", "id")}
    if fam == "file":
        g = read_graph(inst["path"], inst.get("labels"))
    else:
        g = make_graph(fam, **params)
    name = inst.get("id") or fam + "".join(f"_{k}{v}" for k, v in sorted(params.items()))
    return name, g


def _lp_setup(algo: dict, n_dual: int):
    base = theorem_params(n_dual, algo.get("alpha", 2.0), algo.get("beta", 1.0),
                          algo.get("eps", 0.5), algo.get("R", 4))
    ell = algo.get("ell", base.ell)
    p = algo.get("p", base.p)
    return base, ell, p


def _oracle(problem: str, g: Graph, budget: int):
    try:
        return exact_solve(problem, g, budget=budget).value
    except BudgetExceeded:
        return None


def run_row(g: Graph, algo: dict, seed: int, oracle: bool, budget: int) -> dict:
    name = algo["name"]
    row: dict = {"n": g.n, "Delta": g.max_degree, "algorithm": name, "seed": seed}
    if name == "mvc":
        k = algo.get("k", 1)
        res = mvc_fmm(g, k, seed=seed)
        value = len(res.cover)
        row.update(k=k, value=value, bound=alpha(g.max_degree, k))
        ref = _oracle("MVC", g, budget) if oracle else None
        row["oracle_value"] = ref
        if ref is not None:
            ratio = Fraction(value, ref) if ref else Fraction(1)
        else:
            dual = res.dual_value
            ratio = Fraction(value) / dual if dual else Fraction(1)
        row["ratio"] = ratio
        row["bound_ok"] = within_alpha(ratio, g.max_degree, k)
    elif name == "lp":
        lp = vertex_cover_lp(g)
        params, ell, p = _lp_setup(algo, lp.n_dual)
        res = solve_lp_local(lp, ell, p, params.R, seed)
        row.update(k=params.R, value=res.primal_value, bound=params.ratio_bound)
        ref = exact_lp(lp).value if oracle else None
        row["oracle_value"] = ref
        ratio = res.primal_value / ref if ref else res.ratio
        row["ratio"] = ratio
        row["bound_ok"] = float(ratio) <= params.ratio_bound
    elif name == "mds":
        params, ell, p = _lp_setup(algo, g.n)
        res = mds_run(g, ell, p, params.R, algo.get("lambda", 4.0), seed)
        value = len(res.nodes)
        ref = _oracle("MDS", g, budget) if oracle else None
        row.update(value=value, oracle_value=ref)
        if ref:
            row["ratio"] = Fraction(value, ref)
    elif name == "mcds":
        k = algo.get("k", 1)
        if not is_connected(g):
            raise ValueError("mcds needs a connected graph")
        params, ell, p = _lp_setup(algo, g.n)
        res = mcds_pipeline(g, k, ell, p, params.R, algo.get("lambda", 4.0), seed)
        value = len(res.connected)
        ref = _oracle("MCDS", g, budget) if oracle else None
        row.update(k=k, value=value, oracle_value=ref)
        if ref:
            row["ratio"] = Fraction(value, ref)
    else:
        raise ValueError(f"unknown algorithm {name!r}")
    if row.get("ratio") is not None:
        row["ratio_decimal"] = float(row["ratio"])
    return row


def run_experiment(config: dict) -> Report:
    """Run every (instance, algorithm, seed) combination in config order.

    Module errors are recorded in the row's ``error`` column. An
    :class:`InvariantViolation` is recorded, counted and stops the run.
    """
    cfg = normalize_config(config)
    oracle = cfg.get("oracle", True)
    budget = cfg.get("oracle_budget", 32)
    timed = cfg.get("record_time", False)
    report = Report(rows=[])
    graphs = [_instance_graph(inst) for inst in cfg["instances"]]
    for inst_name, g in graphs:
        for algo in cfg["algorithms"]:
            for seed in cfg["seeds"]:
                started = time.perf_counter()
                base = {"instance": inst_name, "n": g.n, "Delta": g.max_degree,
                        "algorithm": algo["name"], "seed": seed, "k": algo.get("k")}
                try:
                    row = {**base, **run_row(g, algo, seed, oracle, budget)}
                except InvariantViolation as exc:
                    row = {**base, "error": f"invariant: {exc}"}
                    report.violations += 1
                except (LocalLabError, ValueError) as exc:
                    row = {**base, "error": f"{type(exc).__name__}: {exc}"}
                    report.errors += 1
                if timed:
                    row["wall_time"] = time.perf_counter() - started
                report.rows.append(row)
                if report.violations:
                    report.aborted = True
                    report.summary = summarize(report)
                    return report
    report.summary = summarize(report)
    return report


def summarize(report: Report) -> dict:
    ratios = [float(r["ratio"]) for r in report.rows if r.get("ratio") is not None]
    flags = [r["bound_ok"] for r in report.rows if r.get("bound_ok") is not None]
    return {
        "rows": len(report.rows),
        "mean_ratio": (sum(ratios) / len(ratios)) if ratios else None,
        "max_ratio": max(ratios) if ratios else None,
        "bound_failures": sum(1 for f in flags if not f),
        "errors": report.errors,
        "violations": report.violations,
        "aborted": report.aborted,
    }


def write_report(report: Report, csv_path: Optional[str], summary_path: Optional[str]) -> None:
    if csv_path:
        Path(csv_path).write_text(report.csv_text())
    if summary_path:
        Path(summary_path).write_text(json.dumps(report.summary, indent=1, sort_keys=True) + "\n")


"""Command line entry point: ``locallab {gen,run,verify,oracle,experiment}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import jsonschema

from .cds import mcds_pipeline
from .errors import LocalLabError
from .experiment import load_config, run_experiment, write_report
from .families import FAMILIES, make_graph
from .graph import girth, khop_view
from .graphio import read_graph, write_graph
from .lowerbound import (
    build_cluster_tree,
    build_hk,
    cluster_levels,
    delta_sequence,
    dq_graph,
    geometric_deltas,
    girth_boost,
    instantiate_naive,
    unroll_cluster_view,
)
from .lp.mds import mds_run
from .lp.model import read_lp, vertex_cover_lp
from .lp.solver import solve_lp_local, theorem_params
from .mvc import mvc_fmm
from .oracles.exact import PROBLEMS, exact_lp, exact_solve
from .viewtree import views_equal


def _json_default(v):
    if isinstance(v, Fraction):
        return str(v)
    raise TypeError(type(v).__name__)


def _emit(doc) -> None:
    print(json.dumps(doc, default=_json_default, sort_keys=True))


def _deltas(args) -> tuple[int, ...]:
    if args.deltas:
        return tuple(int(x) for x in args.deltas.split(","))
    if args.delta is not None:
        return delta_sequence(args.delta, args.k)
    return geometric_deltas(args.k)


def _family_params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        key, _, val = item.partition("=")
        if not _:
            raise SystemExit(f"bad parameter {item!r}; use key=value")
        out[key] = float(val) if "." in val else int(val)
    return out


# ------------------------------------------------------------------ gen

def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "graph":
        g = make_graph(args.family, **_family_params(args.param))
    elif kind == "dq":
        g = dq_graph(args.r, args.q)
    else:
        ct = build_cluster_tree(args.k, _deltas(args), args.n0)
        if kind == "ct":
            _emit({
                "k": ct.k, "deltas": list(ct.deltas), "n0": ct.n0,
                "clusters": [{"id": c.id, "parent": c.parent, "link": c.link, "level": c.level,
                              "depth": c.depth, "size": c.size} for c in ct.clusters],
                "arcs": [[a.parent, a.child, a.link] for a in ct.arcs],
            })
            return 0
        g = instantiate_naive(ct, args.seed)
        if kind == "gk" and args.boost:
            g = girth_boost(g, args.k, cluster_levels(ct, g))
        elif kind == "hk":
            g = build_hk(g)
    if args.out:
        write_graph(g, args.out, args.labels_out)
    _emit({"kind": kind, "n": g.n, "m": g.m, "max_degree": g.max_degree, "out": args.out})
    return 0


# ------------------------------------------------------------------ run

def cmd_run(args) -> int:
    g = read_graph(args.graph, args.labels)
    if args.algo == "mvc":
        res = mvc_fmm(g, args.k, seed=args.seed, workers=args.workers, strict=False)
        dual = res.dual_value
        _emit({"algorithm": "mvc", "cover": res.cover, "size": len(res.cover),
               "dual_value": dual, "ratio": Fraction(len(res.cover)) / dual if dual else None,
               "bound": res.ratio_bound, "rounds": res.rounds, "assertion_log": res.assertion_log})
        return 1 if res.assertion_log else 0
    lp = read_lp(args.lp) if args.lp else vertex_cover_lp(g)
    params = theorem_params(lp.n_dual if args.algo == "lp" else g.n, args.alpha, args.beta, args.eps, args.R)
    ell = args.ell or params.ell
    if args.algo == "lp":
        res = solve_lp_local(lp, ell, params.p, params.R, args.seed, workers=args.workers)
        _emit({"algorithm": "lp", "primal_value": res.primal_value, "dual_value": res.dual_value,
               "ratio": res.ratio, "bound": params.ratio_bound, "rounds": res.rounds, "x": res.x})
    elif args.algo == "mds":
        res = mds_run(g, ell, params.p, params.R, args.lam, args.seed)
        _emit({"algorithm": "mds", "nodes": res.nodes, "size": len(res.nodes)})
    else:
        res = mcds_pipeline(g, args.k, ell, params.p, params.R, args.lam, args.seed)
        _emit({"algorithm": "mcds", "dominating": res.dominating, "nodes": res.connected,
               "size": len(res.connected), "kept_edges": res.kept_edges, "candidate_edges": res.member_edges})
    return 0


# --------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    if args.what == "girth":
        g = read_graph(args.graph)
        value = girth(g, args.cutoff)
        ok = args.min is None or value >= args.min
        _emit({"girth": "inf" if value == float("inf") else value, "ok": ok})
        return 0 if ok else 1
    ct = build_cluster_tree(args.k, _deltas(args), args.n0)
    depth = args.depth if args.depth is not None else args.k
    cg = ct.cluster_graph()
    if args.hk:
        cg = cg.doubled()
        n = len(ct.clusters)
        starts = [0, 1, n, n + 1]
    else:
        starts = [0, 1]
    views = [unroll_cluster_view(cg, s, None, depth) for s in starts]
    ok = all(views_equal(a, b, depth) for a in views for b in views)
    result = {"k": args.k, "deltas": list(ct.deltas), "depth": depth, "equal": ok}
    if args.nodes:
        g = instantiate_naive(ct)
        bad = 0
        for v in g.nodes():
            c = g.label(v)
            if ct.clusters[c].depth >= depth:
                if khop_view(g, v, depth, labeled=True) != unroll_cluster_view(cg, c, None, depth, True):
                    bad += 1
        result["node_mismatches"] = bad
        ok = ok and bad == 0
    _emit(result)
    return 0 if ok else 1


# --------------------------------------------------------------- oracle

def cmd_oracle(args) -> int:
    if args.lp_mode == "lp" or args.lp:
        if not args.lp:
            raise SystemExit("oracle lp needs --lp FILE")
        sol = exact_lp(read_lp(args.lp), args.budget)
        _emit({"problem": "LP", "value": sol.value, "dual_value": sol.extra["dual_value"],
               "x": sol.extra["x"], "y": sol.extra["y"]})
        return 0
    if not (args.problem and args.graph):
        raise SystemExit("oracle needs --problem and --graph (or: oracle lp --lp FILE)")
    g = read_graph(args.graph)
    mis = [int(x) for x in args.mis.split(",")] if args.mis else None
    sol = exact_solve(args.problem, g, budget=args.budget, mis=mis)
    _emit({"problem": sol.problem, "value": sol.value, "witness": sol.witness})
    return 0


# ----------------------------------------------------------- experiment

def cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    report = run_experiment(cfg)
    out = cfg.get("output", {})
    csv_path = args.csv or out.get("csv")
    summary_path = args.summary or out.get("summary")
    write_report(report, csv_path, summary_path)
    if not csv_path:
        sys.stdout.write(report.csv_text())
    print(json.dumps(report.summary, sort_keys=True), file=sys.stderr)
    return report.exit_status


# --------------------------------------------------------------- parser

def _add_ct_args(p) -> None:
    p.add_argument("--k", type=int, default=1, help="lower-bound parameter k (>= 1)")
    p.add_argument("--delta", type=int, default=None,
                   help="use delta_i = 2^(i(i-1)/2) * delta^i")
    p.add_argument("--deltas", default=None, help="explicit comma-separated delta sequence")
    p.add_argument("--n0", type=int, default=None, help="root cluster size (default: smallest integral)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="locallab", description="LOCAL-model lower-bound lab")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate cluster trees and graphs")
    g.add_argument("kind", choices=["ct", "gk", "hk", "dq", "graph"],
                   help="ct: cluster tree JSON; gk/hk: lower-bound graphs; dq: D(r,q); graph: named family")
    _add_ct_args(g)
    g.add_argument("--boost", action="store_true", help="gk only: raise girth via D(r,q)")
    g.add_argument("--seed", type=int, default=None, help="shuffle nodes inside clusters")
    g.add_argument("--r", type=int, default=3, help="dq: vector length")
    g.add_argument("--q", type=int, default=3, help="dq: prime field size")
    g.add_argument("--family", choices=sorted(FAMILIES), default="gnp", help="graph: family name")
    g.add_argument("--param", action="append", metavar="KEY=VALUE", help="graph: family parameter")
    g.add_argument("--out", default=None, help="edge-list (or .json) output path")
    g.add_argument("--labels-out", default=None, help="node label output path")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run a distributed algorithm on a graph")
    r.add_argument("algo", choices=["mvc", "lp", "mds", "mcds"])
    r.add_argument("--graph", required=True, help="edge-list or .json graph file")
    r.add_argument("--labels", default=None, help="node label file")
    r.add_argument("--lp", default=None, help="lp only: covering LP file (default: VC relaxation)")
    r.add_argument("--k", type=int, default=2, help="mvc: round parameter; mcds: girth parameter")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--workers", type=int, default=1, help="engine worker threads")
    r.add_argument("--alpha", type=float, default=2.0, help="LS selection exponent")
    r.add_argument("--beta", type=float, default=1.0, help="failure exponent")
    r.add_argument("--eps", type=float, default=0.5, help="slack in (0, 1)")
    r.add_argument("--R", type=int, default=4, help="LS radius cap")
    r.add_argument("--ell", type=int, default=None, help="number of decompositions")
    r.add_argument("--lam", type=float, default=4.0, help="rounding multiplier")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="check view equality or girth")
    v.add_argument("what", choices=["views", "girth"])
    _add_ct_args(v)
    v.add_argument("--depth", type=int, default=None, help="views: comparison depth (default k)")
    v.add_argument("--hk", action="store_true", help="views: use the doubled instance")
    v.add_argument("--nodes", action="store_true", help="views: also compare node-level views")
    v.add_argument("--graph", default=None, help="girth: graph file")
    v.add_argument("--cutoff", type=int, default=None, help="girth: search limit")
    v.add_argument("--min", type=int, default=None, help="girth: required lower bound")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact reference solutions")
    o.add_argument("lp_mode", nargs="?", choices=["lp"], help="solve an LP file instead of a graph problem")
    o.add_argument("--problem", choices=list(PROBLEMS))
    o.add_argument("--graph", default=None)
    o.add_argument("--lp", default=None)
    o.add_argument("--mis", default=None, help="MIS: comma-separated set to check")
    o.add_argument("--budget", type=int, default=32, help="maximum size handled exactly")
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("experiment", help="run a YAML/JSON experiment config")
    e.add_argument("--config", required=True)
    e.add_argument("--csv", default=None, help="override output.csv")
    e.add_argument("--summary", default=None, help="override output.summary")
    e.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "verify" and args.what == "girth" and not args.graph:
        raise SystemExit("verify girth needs --graph")
    try:
        return args.func(args)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "config"
        print(f"invalid config ({where}): {exc.message}", file=sys.stderr)
        return 2
    except (LocalLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

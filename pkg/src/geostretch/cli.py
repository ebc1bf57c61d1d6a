"""Command-line front end.

Every run prints one JSON object with ``config``, ``result`` and
``timings`` sections (``timings`` stays empty unless ``--timings`` is given,
so repeated runs are byte-identical). Exit codes: 0 success, 1 failed
validation or check, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import warnings
from dataclasses import replace

from . import __version__
from .analysis import (
    BOUND_TOL,
    NAIVE_CAP,
    BoundCheck,
    bound_checks,
    check_kcenter_transfer,
    check_fps_guarantee,
    relative_close,
    stretch_fast,
    stretch_naive,
)
from .bench import run_benchmark
from .exceptions import CorruptFile, GeoStretchError, ParseError, VersionMismatch
from .exhaustive import (
    DEFAULT_BUDGET,
    exists_sources_with_stretch,
    minimum_vertex_cover,
    optimal_kcenter_sources,
    optimal_stretch_sources,
)
from .generators import grid_mesh, random_connected_graph
from .graph import edge_stats, mesh_to_graph, validate_triangle_mesh
from .io import is_off_file, read_edge_list, read_off, write_edge_list, write_off
from .oracle import Oracle, approx_distance, load_oracle, nearest_source, save_oracle
from .reduction import (
    GadgetParams,
    build_reduction,
    gadget_case_table,
    read_embedding,
    stretch_equivalence_check,
    vc_equivalence_check,
)
from .sampling import _fps, kcenter_radius, random_sources
from .shortest_path import THREADS_ENV, DistanceTable, all_pairs


class Run:
    def __init__(self, args):
        self.args = args
        self.timings: dict[str, float] = {}
        self.failed = False

    def timed(self, name, fn, *a, **kw):
        t0 = time.perf_counter()
        out = fn(*a, **kw)
        self.timings[name] = time.perf_counter() - t0
        return out

    def check(self, checks: list[BoundCheck]) -> list[dict]:
        tol = self.args.bound_tol
        out = []
        for c in checks:
            if tol != BOUND_TOL and not c.name.endswith("_violations"):
                c = replace(c, holds=c.lhs <= c.rhs + tol)
            if not c.holds:
                self.failed = True
            out.append(c.to_dict())
        return out


def load_graph(path):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if is_off_file(path):
            graph = mesh_to_graph(read_off(path))
        else:
            graph = read_edge_list(path)
    return graph, [str(w.message) for w in caught]


# ------------------------------------------------------------- commands


def cmd_validate(run: Run):
    path = run.args.file
    if is_off_file(path):
        mesh = read_off(path)
        report = validate_triangle_mesh(mesh)
        result = {"kind": "mesh", "vertices": mesh.vertex_count, "faces": len(mesh.faces), **report.to_dict()}
        if report.ok:
            graph = mesh_to_graph(mesh)
            result["edges"] = graph.edge_count
            result["edge_stats"] = vars(edge_stats(graph))
        else:
            run.failed = True
        return result
    graph, notes = load_graph(path)
    result = {"kind": "graph", "ok": True, "vertices": graph.vertex_count, "edges": graph.edge_count, "warnings": notes}
    if graph.edge_count:
        result["edge_stats"] = vars(edge_stats(graph))
    return result


def _start_kwargs(args):
    return {"start": args.start, "seed": args.seed}


def cmd_sample(run: Run):
    graph, _ = load_graph(run.args.graph)
    if run.args.baseline == "random":
        ss = run.timed("sample", random_sources, graph, run.args.k, seed=run.args.seed)
    else:
        ss = run.timed("sample", lambda: _fps(graph, run.args.k, **_start_kwargs(run.args))[0])
    return {**ss.to_dict(), "kcenter_radius": kcenter_radius(graph, ss.sources)}


def cmd_oracle_build(run: Run):
    graph, _ = load_graph(run.args.graph)
    ss, rows = run.timed("fps_and_rows", _fps, graph, run.args.k, keep_rows=True, **_start_kwargs(run.args))
    oracle = Oracle(DistanceTable(ss.sources, rows), graph.checksum, ss)
    save_oracle(oracle, run.args.output)
    return {
        "n": oracle.n,
        "k": oracle.k,
        "sources": list(ss.sources),
        "radii": list(ss.radii),
        "output": run.args.output,
        "graph_checksum": f"{graph.checksum:016x}",
    }


def cmd_oracle_query(run: Run):
    graph = load_graph(run.args.graph)[0] if run.args.graph else None
    oracle = load_oracle(run.args.oracle, graph)
    ans = approx_distance(oracle, run.args.p, run.args.q)
    sp, dp = nearest_source(oracle, run.args.p)
    sq, dq = nearest_source(oracle, run.args.q)
    return {
        "p": run.args.p,
        "q": run.args.q,
        "value": ans.value,
        "witness_source": ans.witness_source,
        "nearest_source_p": [sp, dp],
        "nearest_source_q": [sq, dq],
    }


def cmd_stretch(run: Run):
    args = run.args
    graph, _ = load_graph(args.graph)
    oracle = load_oracle(args.oracle, graph)
    result = {}
    reports = {}
    if args.method in ("fast", "both"):
        reports["fast"] = run.timed("stretch_fast", stretch_fast, graph, oracle)
    if args.method in ("naive", "both"):
        reports["naive"] = run.timed("stretch_naive", stretch_naive, graph, oracle, cap=args.naive_cap)
    main = reports.get("fast") or reports["naive"]
    result.update(main.to_dict())
    if args.method == "both":
        agree = relative_close(reports["fast"].stretch, reports["naive"].stretch, args.rel_tol)
        result["method"] = "both"
        result["naive"] = reports["naive"].to_dict()
        result["methods_agree"] = agree
        if not agree:
            run.failed = True
    if args.check_bounds:
        checks = run.timed("bounds", bound_checks, graph, oracle, cap=args.naive_cap, stretch=main.stretch)
        result["bounds"] = run.check(checks)
    return result


def cmd_brute(run: Run):
    args = run.args
    graph, _ = load_graph(args.graph)
    obj = args.objective
    if obj == "vc":
        pairs = list(zip(graph.edge_u.tolist(), graph.edge_v.tolist()))
        res = run.timed("search", minimum_vertex_cover, pairs, graph.vertex_count, max_k=args.k, budget=args.budget)
        return {"objective": "vc", **res.to_dict()}
    if args.k is None:
        raise UsageError(f"--objective {obj} requires -k")
    if obj == "exists":
        if args.xi is None:
            raise UsageError("--objective exists requires --xi")
        found, witness = run.timed("search", exists_sources_with_stretch, graph, args.k, args.xi, budget=args.budget)
        return {"objective": "exists", "k": args.k, "xi": args.xi, "exists": found, "witness": list(witness) if witness else None}
    dist = all_pairs(graph)
    fps = _fps(graph, args.k, **_start_kwargs(args))[0]
    if obj == "stretch":
        res = run.timed("search", optimal_stretch_sources, graph, args.k, budget=args.budget, distances=dist)
        kc = optimal_kcenter_sources(graph, args.k, budget=args.budget, distances=dist)
        checks = [check_fps_guarantee(graph, fps, res.objective), check_kcenter_transfer(graph, fps, kc.best)]
        return {"objective": "stretch", **res.to_dict(), "fps_sources": list(fps.sources), "bounds": run.check(checks)}
    res = run.timed("search", optimal_kcenter_sources, graph, args.k, budget=args.budget, distances=dist)
    fps_r = kcenter_radius(graph, fps.sources)
    checks = [BoundCheck.compare("fps_2_approximation", fps_r, 2 * res.objective)]
    return {"objective": "kcenter", **res.to_dict(), "fps_sources": list(fps.sources), "fps_radius": fps_r, "bounds": run.check(checks)}


def cmd_gadget_build(run: Run):
    args = run.args
    inst = run.timed("build", build_reduction, read_embedding(args.embedding), args.xi)
    trace_path = args.trace or (args.output + ".trace.json")
    write_edge_list(inst.g_prime, args.output, comment=f"G' reduction instance, xi={args.xi}, m={inst.m}")
    with open(trace_path, "w", encoding="utf-8") as fh:
        json.dump(inst.traceability(), fh, indent=2)
        fh.write("\n")
    structure = inst.structure_report()
    if not structure.ok:
        run.failed = True
    return {
        "output": args.output,
        "trace": trace_path,
        "vertices": inst.g_prime.vertex_count,
        "edges": inst.g_prime.edge_count,
        "m": inst.m,
        "xi": inst.xi,
        "structure": structure.to_dict(),
    }


def cmd_gadget_verify(run: Run):
    args = run.args
    emb = read_embedding(args.embedding)
    ks = None if args.k is None else range(args.k + 1)
    vc = run.timed("vertex_cover_check", vc_equivalence_check, emb, budget=args.budget)
    thm = run.timed("stretch_check", stretch_equivalence_check, emb, args.xi, ks=ks, budget=args.budget)
    cases = gadget_case_table(GadgetParams.for_length(1.0, args.xi))
    if not (vc.all_agree and thm.all_agree):
        run.failed = True
    return {
        "vertex_cover_subdivision": vc.to_dict(),
        "stretch_reduction": thm.to_dict(),
        "gadget_cases": [{"case": c.case, "pair": list(c.pair), "ratio": c.ratio} for c in cases],
    }


def cmd_bench(run: Run):
    args = run.args
    graph, _ = load_graph(args.graph)
    ks = [int(x) for x in args.ks.split(",")] if args.ks else None
    return run_benchmark(
        graph,
        args.k,
        ks=ks,
        n_queries=args.queries,
        repeats=args.repeats,
        naive_cap=args.naive_cap,
        threads=args.threads,
        **_start_kwargs(args),
    )


def cmd_generate(run: Run):
    args = run.args
    if args.kind == "grid":
        mesh = grid_mesh(args.rows, args.cols)
        if args.output.lower().endswith(".off"):
            write_off(mesh, args.output)
        else:
            write_edge_list(mesh_to_graph(mesh), args.output)
        return {"kind": "grid", "vertices": mesh.vertex_count, "faces": len(mesh.faces), "output": args.output}
    graph = random_connected_graph(args.n, args.extra, args.lengths, rng=args.seed)
    write_edge_list(graph, args.output)
    return {"kind": "random", "vertices": graph.vertex_count, "edges": graph.edge_count, "output": args.output}


# ---------------------------------------------------------------- parser


class UsageError(Exception):
    pass


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _pos_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_pos_int, default=None, help=f"worker cap (default: ${THREADS_ENV} or CPU count)")
    common.add_argument("--format", choices=["json", "csv"], default="json", help="csv prints the run's main table")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in the output")
    common.add_argument("--bound-tol", type=float, default=BOUND_TOL, help="absolute tolerance for bound checks")
    common.add_argument("--rel-tol", type=float, default=1e-12, help="relative tolerance for fast/naive agreement")

    start = argparse.ArgumentParser(add_help=False)
    g = start.add_mutually_exclusive_group()
    g.add_argument("--start", type=_nonneg_int, default=None, help="first FPS source (default 0)")
    g.add_argument("--seed", type=int, default=None, help="seed for a random first source")

    p = argparse.ArgumentParser(prog="geostretch", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a graph or OFF mesh file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("sample", parents=[common, start], help="farthest point sampling")
    s.add_argument("graph")
    s.add_argument("-k", type=_pos_int, required=True)
    s.add_argument("--baseline", choices=["fps", "random"], default="fps")
    s.set_defaults(func=cmd_sample)

    o = sub.add_parser("oracle", help="build or query a landmark oracle").add_subparsers(dest="action", required=True)
    s = o.add_parser("build", parents=[common, start])
    s.add_argument("graph")
    s.add_argument("-k", type=_pos_int, required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_oracle_build)
    s = o.add_parser("query", parents=[common])
    s.add_argument("oracle")
    s.add_argument("-p", type=_nonneg_int, required=True)
    s.add_argument("-q", type=_nonneg_int, required=True)
    s.add_argument("--graph", default=None, help="verify the oracle was built for this graph")
    s.set_defaults(func=cmd_oracle_query)

    s = sub.add_parser("stretch", parents=[common], help="stretch factor of an oracle")
    s.add_argument("graph")
    s.add_argument("oracle")
    s.add_argument("--method", choices=["fast", "naive", "both"], default="fast")
    s.add_argument("--check-bounds", action="store_true")
    s.add_argument("--naive-cap", type=_pos_int, default=NAIVE_CAP)
    s.set_defaults(func=cmd_stretch)

    s = sub.add_parser("brute", parents=[common, start], help="exhaustive optimum on small graphs")
    s.add_argument("graph")
    s.add_argument("--objective", choices=["stretch", "kcenter", "vc", "exists"], required=True)
    s.add_argument("-k", type=_nonneg_int, default=None)
    s.add_argument("--xi", type=float, default=None)
    s.add_argument("--budget", type=_pos_int, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_brute)

    gsub = sub.add_parser("gadget", help="vertex-cover reduction instances").add_subparsers(dest="action", required=True)
    s = gsub.add_parser("build", parents=[common])
    s.add_argument("embedding")
    s.add_argument("--xi", type=float, default=3.0)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--trace", default=None, help="traceability sidecar (default: <output>.trace.json)")
    s.set_defaults(func=cmd_gadget_build)
    s = gsub.add_parser("verify", parents=[common])
    s.add_argument("embedding")
    s.add_argument("-k", type=_nonneg_int, default=None, help="largest k in the agreement table (default |V|)")
    s.add_argument("--xi", type=float, default=3.0)
    s.add_argument("--budget", type=_pos_int, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_gadget_verify)

    s = sub.add_parser("bench", parents=[common, start], help="timing harness")
    s.add_argument("graph")
    s.add_argument("-k", type=_pos_int, required=True)
    s.add_argument("--queries", type=_pos_int, default=20000)
    s.add_argument("--ks", default=None, help="comma-separated k values for the query scaling table")
    s.add_argument("--repeats", type=_pos_int, default=5)
    s.add_argument("--naive-cap", type=_pos_int, default=NAIVE_CAP)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("generate", parents=[common], help="write a synthetic graph or mesh")
    s.add_argument("kind", choices=["grid", "random"])
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--rows", type=_pos_int, default=100)
    s.add_argument("--cols", type=_pos_int, default=100)
    s.add_argument("-n", type=_pos_int, default=50)
    s.add_argument("--extra", type=_nonneg_int, default=0)
    s.add_argument("--lengths", choices=["unit", "uniform"], default="unit")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_generate)
    return p


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    if cfg.get("threads") is None:
        env = os.environ.get(THREADS_ENV)
        cfg["threads"] = int(env) if env and env.isdigit() else None
    return cfg


def _main_table(command: str, result: dict) -> list[dict]:
    if command == "sample":
        return [{"index": i, "source": s, "radius": r} for i, (s, r) in enumerate(zip(result["sources"], result["radii"]))]
    if command == "gadget" and "stretch_reduction" in result:
        vc_rows = {r["k"]: r for r in result["vertex_cover_subdivision"]["rows"]}
        return [
            {
                "k": r["k"],
                "vc_le_k": r["left"],
                "sources_exist": r["right"],
                "agree": r["agree"],
                "vc_subdivision_agree": vc_rows[r["k"]]["agree"],
            }
            for r in result["stretch_reduction"]["rows"]
        ]
    if command == "bench":
        return result["query_scaling"]
    if "bounds" in result:
        return result["bounds"]
    return [{"key": k, "value": json.dumps(v)} for k, v in result.items()]


def _emit(args, payload, out):
    if args.format == "csv" and "result" in payload:
        rows = _main_table(args.command, payload["result"])
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(json.dumps(payload, indent=2) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is not None:
        os.environ[THREADS_ENV] = str(args.threads)
    run = Run(args)
    payload = {"config": _config(args)}
    code = 0
    try:
        payload["result"] = args.func(run)
        code = 1 if run.failed else 0
    except UsageError as exc:
        print(f"geostretch: usage error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ParseError, CorruptFile, VersionMismatch) as exc:
        payload["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 3
    except GeoStretchError as exc:
        payload["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 1
    payload["timings"] = run.timings if args.timings or args.command == "bench" else {}
    _emit(args, payload, out)
    if "error" in payload:
        print(f"geostretch: {payload['error']['type']}: {payload['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

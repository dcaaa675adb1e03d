"""Command-line front door: validate, build, ingest, simulate, serve, bench.

Exit codes: 0 ok, 1 validation/build errors, 2 usage or IO errors.
DN_NO_COLOR disables output styling (styling is also skipped when stdout
is not a terminal, so piped output is always plain).
"""

from __future__ import annotations

import argparse
import gc
import json
import os
import statistics
import sys
import time

from . import builders, extraction, graph as graphmod, inputs, protocol
from .errors import GraphParseError, NavGraphError

OK, FAIL, USAGE = 0, 1, 2


def _color_enabled() -> bool:
    return sys.stdout.isatty() and not os.environ.get("DN_NO_COLOR")


def _style(text: str, code: str) -> str:
    if not _color_enabled():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _load_graph(path: str):
    try:
        return graphmod.load(path), OK
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return None, USAGE
    except (GraphParseError, NavGraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, FAIL


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh), OK
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return None, USAGE
    except json.JSONDecodeError as exc:
        print(f"error: {path}: invalid JSON: {exc}", file=sys.stderr)
        return None, FAIL


def _write_graph(g, output: str | None) -> None:
    text = graphmod.serialize(g)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_validate(args) -> int:
    g, code = _load_graph(args.graph)
    if g is None:
        return code
    diags = graphmod.validate(g)
    if args.format == "json":
        print(json.dumps([d._asdict() for d in diags], sort_keys=True))
    else:
        for d in diags:
            tag = _style(d.severity, "31" if d.severity == "error" else "33")
            print(f"{tag}: [{d.code}] {d.subject}: {d.message}")
        errors = sum(1 for d in diags if d.severity == "error")
        warnings = len(diags) - errors
        print(f"{g.node_count()} nodes, {g.edge_count()} edges, "
              f"{errors} errors, {warnings} warnings")
    return FAIL if any(d.severity == "error" for d in diags) else OK


def cmd_build(args) -> int:
    doc, code = _read_json(args.spec)
    if doc is None:
        return code
    try:
        g = builders.build_from_document(doc)
    except (NavGraphError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    _write_graph(g, args.output)
    return OK


def cmd_ingest(args) -> int:
    scene, code = _read_json(args.scene)
    if scene is None:
        return code
    try:
        options = extraction.ExtractionOptions(args.mode, args.template)
        g = extraction.ingest(scene, options)
    except (NavGraphError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    _write_graph(g, args.output)
    return OK


def _script_requests(graph_path: str, script: dict | list) -> list[dict]:
    steps = script["steps"] if isinstance(script, dict) else script
    if not steps:
        raise ValueError("script has no steps")
    ops = {"rule": ("move", "rule"), "key": ("input", "token"), "command": ("command", "text")}
    requests = [
        {"id": "1", "op": "init", "args": {"graph": graph_path}},
        {"id": "2", "op": "enter", "args": {}},
    ]
    for i, step in enumerate(steps):
        kind, value = step["kind"], step["value"]
        if kind not in ops:
            raise ValueError(f"unknown step kind {kind!r}")
        op, key = ops[kind]
        requests.append({"id": str(i + 3), "op": op, "args": {key: value}})
    return requests


def _trace_line(step: dict, response: dict) -> str:
    value = step["value"]
    if not response["ok"]:
        return f"{value}\terror:{response['error']['code']}\t-\t-"
    result = response["result"]
    move = result.get("move")
    if move is None:
        return f"{value}\tignored\t-\t-"
    frm = move["from"] if move["from"] is not None else "-"
    to = move["to"] if move["to"] is not None else "-"
    desc = result.get("description") or "-"
    return f"{value}\t{move['status']}\t{frm}->{to}\t{desc}"


def cmd_simulate(args) -> int:
    script, code = _read_json(args.script)
    if script is None:
        return code
    if not os.path.exists(args.graph):
        print(f"error: no such file: {args.graph}", file=sys.stderr)
        return USAGE
    try:
        requests = _script_requests(args.graph, script)
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: bad script: {exc}", file=sys.stderr)
        return FAIL
    handler = protocol.SessionHandler()
    steps = script["steps"] if isinstance(script, dict) else script
    responses = []
    for request in requests:
        response = handler.handle(request)
        responses.append(response)
        if request["op"] == "init":
            if not response["ok"]:
                print(f"error: {response['error']['message']}", file=sys.stderr)
                return FAIL
            if args.remap:
                try:
                    handler.bindings = inputs.load_remap_file(handler.bindings, args.remap)
                except (OSError, NavGraphError, ValueError) as exc:
                    print(f"error: remap: {exc}", file=sys.stderr)
                    return USAGE if isinstance(exc, OSError) else FAIL
        if not response["ok"] and response["error"]["code"] == "InactiveSession":
            break
    if args.format == "json":
        for response in responses:
            print(json.dumps(response, sort_keys=True, separators=(",", ":")))
    else:
        for step, response in zip(steps, responses[2:]):
            print(_trace_line(step, response))
    return OK


def cmd_serve(args) -> int:
    if args.stdio:
        protocol.serve_stdio(args.graph)
        return OK
    if args.port is None:
        print("error: choose --stdio or --port N", file=sys.stderr)
        return USAGE
    try:
        protocol.serve_tcp(args.port, args.graph)
    except KeyboardInterrupt:
        pass
    return OK


def _bench_once(n: int, mode: str) -> tuple[float, float]:
    scene = extraction.make_scatter_scene(n)
    options = extraction.ExtractionOptions(mode=mode)
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter()
        nodes = extraction.extract_nodes(scene)
        extraction.describe_nodes(nodes, options.description_template)
        inferred = extraction.infer_edges(nodes, options)
        t1 = time.perf_counter()
        graphmod.build_graph(
            nodes, inferred.edges, inferred.rules,
            universal_edges=(builders.EXIT_EDGE_ID, builders.RETURN_EDGE_ID),
            entry=inferred.entry, drill_rule="drill")
        t2 = time.perf_counter()
    finally:
        if was_enabled:
            gc.enable()
        gc.collect()  # keep allocator state comparable across repetitions
    return (t2 - t0) * 1e3, (t2 - t1) * 1e3


def run_bench(sizes: list[int], repeats: int, mode: str = extraction.FLAT) -> dict:
    """Median ingest/build timings per scene size, plus a linear fit."""
    rows = []
    for n in sizes:
        ingest_ms, build_ms = [], []
        for _ in range(repeats):
            total, build = _bench_once(n, mode)
            ingest_ms.append(total)
            build_ms.append(build)
        rows.append({"size": n, "repeats": repeats,
                     "ingest_ms": round(statistics.median(ingest_ms), 3),
                     "build_ms": round(statistics.median(build_ms), 3)})
    fit = None
    if len(sizes) >= 3:
        xs = [float(r["size"]) for r in rows]
        ys = [r["ingest_ms"] for r in rows]
        slope, intercept = statistics.linear_regression(xs, ys)
        r2 = statistics.correlation(xs, ys) ** 2
        fit = {"slope_ms_per_mark": round(slope, 6), "intercept_ms": round(intercept, 3),
               "r2": round(r2, 4)}
    return {"mode": mode, "rows": rows, "fit": fit}


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        print(f"error: bad --sizes value: {args.sizes!r}", file=sys.stderr)
        return USAGE
    if not sizes or args.repeats < 1:
        print("error: need at least one size and one repeat", file=sys.stderr)
        return USAGE
    report = run_bench(sizes, args.repeats, args.mode)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    elif args.format == "text":
        print(f"{'size':>8}  {'ingest_ms':>10}  {'build_ms':>10}  (median of {args.repeats})")
        for row in report["rows"]:
            print(f"{row['size']:>8}  {row['ingest_ms']:>10.3f}  {row['build_ms']:>10.3f}")
        if report["fit"]:
            fit = report["fit"]
            print(f"linear fit: {fit['slope_ms_per_mark']:.6f} ms/mark "
                  f"+ {fit['intercept_ms']:.3f} ms, r2={fit['r2']:.4f}")
    else:
        print("size,repeats,ingest_ms,build_ms")
        for row in report["rows"]:
            print(f"{row['size']},{row['repeats']},{row['ingest_ms']},{row['build_ms']}")
        if report["fit"]:
            fit = report["fit"]
            print(f"# fit slope_ms_per_mark={fit['slope_ms_per_mark']} "
                  f"intercept_ms={fit['intercept_ms']} r2={fit['r2']}")
    return OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="navgraph",
        description="Navigation-graph engine tools: validate, build, ingest, "
                    "simulate, serve, bench.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph file; exit 1 on error diagnostics")
    p.add_argument("graph")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("build", help="compile a structure spec file into a graph")
    p.add_argument("spec")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("ingest", help="turn a chart scene file into a graph")
    p.add_argument("scene")
    p.add_argument("--mode", choices=(extraction.FLAT, extraction.GROUPED),
                   default=extraction.FLAT)
    p.add_argument("--template", default="default",
                   help="description template id or inline '{field}' template")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("simulate", help="run a navigation script against a graph")
    p.add_argument("graph")
    p.add_argument("script")
    p.add_argument("--remap", default=None, help="JSON file of token -> rule overrides")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("serve", help="serve the session protocol")
    p.add_argument("--stdio", action="store_true")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--graph", default=None, help="default graph path for init")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("bench", help="time scene ingestion at several sizes")
    p.add_argument("--sizes", default="406,20300")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--mode", choices=(extraction.FLAT, extraction.GROUPED),
                   default=extraction.FLAT)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())

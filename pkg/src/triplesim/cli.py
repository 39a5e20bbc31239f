"""Command line entry point.

Exit codes for ``match``: 0 when something matched, 1 when the match is
empty, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional, TextIO

from . import oracle
from .bench import BenchConfig, bench, write_csv
from .graph import Graph, GraphError, PatternGraph
from .io import SEMANTICS, MatchReport, parse_graph_file
from .locality import match_plus
from .simulation import Stats, build_match_result, dual_simulation, graph_simulation, strong_simulation
from .triple import triple_simulation

EXIT_MATCH, EXIT_EMPTY, EXIT_INPUT = 0, 1, 2


def load_pair(pattern_path: str, data_path: str):
    q = parse_graph_file(pattern_path, pattern=True)
    g = parse_graph_file(data_path, pattern=False)
    assert isinstance(q, PatternGraph) and isinstance(g, Graph)
    return q, g


def run_match(
    semantics: str,
    pattern_path: str,
    data_path: str,
    center_prune: bool = True,
    workers: Optional[int] = None,
    dump_bipartite: Optional[TextIO] = None,
) -> MatchReport:
    """Parse both graphs, dispatch to ``semantics`` and wrap the outcome."""
    if semantics not in SEMANTICS:
        raise GraphError(f"unknown semantics {semantics!r}; choose from {', '.join(SEMANTICS)}")
    q, g = load_pair(pattern_path, data_path)
    stats = Stats()
    t0 = time.perf_counter()
    report: MatchReport
    if semantics in ("sim", "dual"):
        fn = graph_simulation if semantics == "sim" else dual_simulation
        rel = fn(q, g, stats)
        results = [build_match_result(q, g, rel)] if rel else []
        report = MatchReport(semantics, MatchReport.relation_payload(rel) if rel else {}, results)
    elif semantics == "triple":
        hook = None
        if dump_bipartite is not None:
            def hook(u, v, side, bg):  # noqa: E306
                if bg.X:
                    dump_bipartite.write(bg.to_dot(f"{u}@{v}:{side}"))
        tm = triple_simulation(q, g, stats, hook)
        rel = tm.relation
        report = MatchReport(semantics, MatchReport.relation_payload(rel) if rel else {}, [tm.result] if rel else [])
    elif semantics == "strong":
        report = MatchReport(semantics, None, strong_simulation(q, g, center_prune, workers, stats))
    elif semantics == "triple-local":
        report = MatchReport(semantics, None, match_plus(q, g, center_prune, workers, stats))
    else:
        embeddings = oracle.enumerate_isomorphisms(q, g)
        report = MatchReport(semantics, None, [], embeddings=embeddings)
    counters = stats.as_dict()
    counters["wall_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    report.stats = counters
    return report


def _cmd_match(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    dump = open(args.dump_bipartite, "w", encoding="utf-8") if args.dump_bipartite else None
    try:
        report = run_match(args.semantics, args.pattern, args.graph, not args.no_center_prune, args.workers, dump)
    finally:
        if dump is not None:
            dump.close()
    if args.format == "json":
        out.write(report.to_json(with_stats=args.stats))
    else:
        out.write(report.to_dot() if args.format == "dot" else report.to_table())
        if args.stats:
            err.write(json.dumps(report.stats) + "\n")
    return EXIT_MATCH if report.matched else EXIT_EMPTY


def _cmd_bench(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        cfg = BenchConfig.load(args.config)
    except (OSError, ValueError, TypeError) as exc:
        err.write(f"error: invalid bench config: {exc}\n")
        return EXIT_INPUT
    rows = bench(cfg)
    if args.output:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, out)
    return 0


def _cmd_oracle(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    q, g = load_pair(args.pattern, args.graph)
    if args.check == "iso":
        embeddings = oracle.enumerate_isomorphisms(q, g)
        out.write(json.dumps({"embeddings": [dict(sorted(e.items())) for e in embeddings]}, indent=2) + "\n")
        return EXIT_MATCH if embeddings else EXIT_EMPTY
    rel = oracle.brute_force_triple_relation(q, g)
    payload = {"relation": {u: sorted(vs) for u, vs in sorted(rel.items())}}
    if args.check == "compare":
        fast = triple_simulation(q, g).relation
        agree = {u: frozenset(vs) for u, vs in fast.items()} == rel
        payload["agrees_with_triple_simulation"] = agree
        out.write(json.dumps(payload, indent=2) + "\n")
        return EXIT_MATCH if agree else EXIT_EMPTY
    out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_MATCH if rel else EXIT_EMPTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triplesim", description="Graph pattern matching by (triple) simulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("match", help="match a pattern graph against a data graph")
    m.add_argument("--semantics", "-s", choices=SEMANTICS, default="triple")
    m.add_argument("-q", "--pattern", required=True, help="pattern graph (.graph or .json)")
    m.add_argument("-g", "--graph", required=True, help="data graph (.graph or .json)")
    m.add_argument("--format", choices=("table", "json", "dot"), default="table")
    m.add_argument("--stats", action="store_true", help="emit work counters as JSON")
    m.add_argument("--no-center-prune", action="store_true", help="build a ball around every data node")
    m.add_argument("--workers", type=int, default=None, help="processes for per-ball work")
    m.add_argument("--dump-bipartite", metavar="FILE", help="write every LR bipartite graph as DOT (triple only)")
    m.set_defaults(func=_cmd_match)

    b = sub.add_parser("bench", help="time each semantics on synthetic graphs, CSV output")
    b.add_argument("--config", required=True, help="JSON bench configuration")
    b.add_argument("--output", "-o", help="CSV destination (default: stdout)")
    b.set_defaults(func=_cmd_bench)

    o = sub.add_parser("oracle", help="exhaustive reference checks (small inputs only)")
    o.add_argument("check", choices=("iso", "triple", "compare"))
    o.add_argument("-q", "--pattern", required=True)
    o.add_argument("-g", "--graph", required=True)
    o.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args, out, err)
    except GraphError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

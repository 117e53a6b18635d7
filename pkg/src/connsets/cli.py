"""Command-line interface: ``connsets compute | verify | search | bench | mine``."""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
import time
from collections.abc import Iterator
from fractions import Fraction
from typing import BinaryIO

from .blocks import block_cut_tree, near_tree_class
from .counting import DEFAULT_BUDGET, Budget, stats, vertex_profile
from .errors import BudgetExceeded, GraphFormatError, InvalidParams, UnknownStatement
from .families import expand_family, generate
from .formats import iter_edge_lists, iter_graph6, parse_graph6, to_graph6
from .graph import Graph
from .theorems import (
    FAIL,
    FINDING,
    NOT_APPLICABLE,
    PASS,
    Statement,
    mine_exceptions_twice,
    resolve_statements,
    run_statement_suite,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_UNKNOWN_STATEMENT = 4

COMPUTE_CSV_COLUMNS = ["index", "graph6", "n", "N", "S", "A", "D", "near_tree_class", "vertex_profile", "error"]
VERIFY_CSV_COLUMNS = ["statement", "graph_index", "graph6", "status", "param", "witness"]


class InputError(Exception):
    def __init__(self, message: str, line: int | None):
        self.line = line
        super().__init__(message)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _open_input(path: str) -> BinaryIO:
    if path == "-":
        return sys.stdin.buffer
    return open(path, "rb")


def read_graphs(path: str, fmt: str) -> Iterator[Graph]:
    """Stream graphs from ``path``; errors become :class:`InputError` with a line number."""
    fh = _open_input(path)
    try:
        if fmt == "graph6":
            try:
                yield from iter_graph6(fh)
            except GraphFormatError as exc:
                raise InputError(exc.detail, exc.line) from None
        elif fmt == "edges":
            try:
                text = fh.read().decode("utf-8")
            except UnicodeDecodeError as exc:
                raise InputError(f"input is not UTF-8 text (byte offset {exc.start})", None) from None
            try:
                yield from iter_edge_lists(text)
            except GraphFormatError as exc:
                raise InputError(exc.detail, exc.line) from None
        elif fmt == "family":
            for lineno, line in enumerate(fh, 1):
                raw = line.decode("utf-8", errors="replace").split("#", 1)[0].strip()
                if not raw:
                    continue
                try:
                    specs = list(expand_family(raw))
                    graphs = [generate(spec) for spec in specs]
                except InvalidParams as exc:
                    raise InputError(str(exc), lineno) from None
                yield from graphs
        else:
            raise ValueError(f"unknown input format {fmt!r}")
    finally:
        if fh is not sys.stdin.buffer:
            fh.close()


# -- compute -------------------------------------------------------------------


def compute_record(g6: str, budget: int, profile: bool, near_tree: bool) -> dict:
    """The compute output for one graph; disconnected graphs get an ``error`` field."""
    g = parse_graph6(g6)
    if not g.is_connected():
        return {"n": g.n, "error": "disconnected"}
    b = Budget(budget)
    bct = block_cut_tree(g)
    rec = stats(g, b, bct=bct).as_dict()
    if profile:
        rec["vertex_profile"] = [str(c) for c in vertex_profile(g, b, bct=bct)]
    if near_tree:
        rec["near_tree_class"] = near_tree_class(bct).value
    return rec


def _compute_task(task):
    g6, budget, profile, near_tree = task
    try:
        return compute_record(g6, budget, profile, near_tree)
    except BudgetExceeded as exc:
        return exc


def _ordered_map(fn, tasks: Iterator, workers: int) -> Iterator:
    """Map in input order; with several workers, in bounded batches."""
    if workers <= 1:
        for t in tasks:
            yield fn(t)
        return
    from multiprocessing import Pool

    with Pool(workers) as pool:
        while True:
            batch = list(itertools.islice(tasks, workers * 16))
            if not batch:
                return
            yield from pool.map(fn, batch, chunksize=4)


class _Writer:
    """Streams records as JSON lines, a JSON array, or CSV rows.

    With ``wrapped=True`` the JSON form is ``{"results": [...], <trailer>}``
    and JSON lines end with the trailer as its own line.
    """

    def __init__(self, out, fmt: str, columns: list[str], wrapped: bool = False):
        self.out, self.fmt, self.wrapped = out, fmt, wrapped
        self.count = 0
        if fmt == "csv":
            self.csv = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
            self.csv.writeheader()
        elif fmt == "json":
            out.write('{"results":[' if wrapped else "[")

    def write(self, rec: dict) -> None:
        if self.fmt == "jsonl":
            self.out.write(_dump(rec) + "\n")
        elif self.fmt == "json":
            self.out.write(("" if self.count == 0 else ",\n") + _dump(rec))
        else:
            row = {k: (_dump(v) if isinstance(v, (dict, list)) else v) for k, v in rec.items()}
            self.csv.writerow(row)
        self.count += 1

    def close(self, trailer: dict | None = None) -> None:
        if self.fmt == "json":
            self.out.write("]")
            if self.wrapped:
                self.out.write("".join(f",{_dump(k)}:{_dump(v)}" for k, v in (trailer or {}).items()) + "}")
            self.out.write("\n")
        elif self.fmt == "jsonl" and self.wrapped and trailer is not None:
            self.out.write(_dump(trailer) + "\n")
        self.out.flush()


def cmd_compute(args) -> int:
    graphs = read_graphs(args.input, args.format)
    codes: list[str] = []

    def tasks():
        for g in graphs:
            codes.append(to_graph6(g))
            yield codes[-1], args.budget, args.profile, args.near_tree

    writer = _Writer(args.out_fh, args.output_format, COMPUTE_CSV_COLUMNS)
    for index, rec in enumerate(_ordered_map(_compute_task, tasks(), args.workers)):
        if isinstance(rec, BudgetExceeded):
            writer.close()
            print(f"error: graph {index}: {rec}", file=sys.stderr)
            return EXIT_BUDGET
        if args.output_format == "csv":
            rec = {"index": index, "graph6": codes[index], **rec}
            if "vertex_profile" in rec:
                rec["vertex_profile"] = " ".join(rec["vertex_profile"])
        writer.write(rec)
    writer.close()
    return EXIT_OK


# -- verify ------------------------------------------------------------------------


def cmd_verify(args, registry: dict[str, Statement] | None = None) -> int:
    try:
        resolve_statements(args.statements, registry)
    except UnknownStatement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_STATEMENT
    graphs = read_graphs(args.input, args.format)
    timings: dict[int, float] | None = {} if args.timings else None
    counts = {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0, FINDING: 0}
    per_statement: dict[str, dict[str, int]] = {}
    seen_graphs = -1
    writer = _Writer(args.out_fh, args.output_format, VERIFY_CSV_COLUMNS, wrapped=True)
    results = run_statement_suite(
        graphs, args.statements, args.budget, registry=registry, workers=args.workers, timings=timings
    )
    for r in results:
        counts[r.status] += 1
        per = per_statement.setdefault(r.statement, {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0, FINDING: 0})
        per[r.status] += 1
        seen_graphs = max(seen_graphs, r.graph_index)
        writer.write(r.to_json())
    summary = {"graphs": seen_graphs + 1, "totals": counts, "statements": dict(sorted(per_statement.items()))}
    if timings:
        slowest = max(timings, key=timings.get)
        summary["max_runtime_seconds"] = round(timings[slowest], 6)
        summary["slowest_graph_index"] = slowest
    writer.close({"summary": summary})
    return EXIT_FAILED if counts[FAIL] else EXIT_OK


# -- search --------------------------------------------------------------------------

SEARCH_CSV_COLUMNS = ["index", "graph6", "n", "N", "S", "A", "D", "min_degree", "finding"]
BENCH_CSV_COLUMNS = ["index", "n", "m", "N_digits", "seconds"]
MINE_CSV_COLUMNS = ["graph6", "vertex", "n", "N", "degree"]


def _emit_report(args, report: dict, rows: list[dict], columns: list[str]) -> None:
    """JSON: indented report. JSONL: the report on one line. CSV: one row per item."""
    if args.output_format == "json":
        args.out_fh.write(json.dumps(report, indent=2) + "\n")
    elif args.output_format == "jsonl":
        args.out_fh.write(_dump(report) + "\n")
    else:
        writer = _Writer(args.out_fh, "csv", columns)
        for row in rows:
            writer.write(row)
        writer.close()


def cmd_search(args) -> int:
    scanned = skipped = 0
    best: dict[str, tuple[Fraction | None, list[dict]]] = {"min": (None, []), "max": (None, [])}
    findings = []
    rows = []
    for index, g in enumerate(read_graphs(args.input, args.format)):
        if not g.is_connected() or g.min_degree() < args.min_degree:
            skipped += 1
            continue
        s = stats(g, Budget(args.budget))
        value = s.average if args.objective == "A" else s.density
        scanned += 1
        g6 = to_graph6(g)
        entry = {"index": index, "graph6": g6, "n": g.n, "value": _frac(value)}
        for side in ("min", "max"):
            cur, holders = best[side]
            if cur is None or (value < cur if side == "min" else value > cur):
                best[side] = (value, [entry])
            elif value == cur:
                holders.append(entry)
        flagged = g.n > 1 and g.min_degree() >= 3 and s.density <= Fraction(1, 2)
        if flagged:
            findings.append({"index": index, "graph6": g6, "D": _frac(s.density), "kind": "FINDING"})
        if args.output_format == "csv":
            rows.append({"index": index, "graph6": g6, **s.as_dict(), "min_degree": g.min_degree(),
                         "finding": "FINDING" if flagged else ""})

    def record(side: str) -> dict | None:
        value, holders = best[side]
        return None if value is None else {"value": _frac(value), "graphs": holders}

    report = {
        "objective": args.objective,
        "direction": args.direction,
        "min_degree": args.min_degree,
        "scanned": scanned,
        "skipped": skipped,
        "record": record(args.direction),
        "min": record("min"),
        "max": record("max"),
        "findings": findings,
    }
    _emit_report(args, report, rows, SEARCH_CSV_COLUMNS)
    return EXIT_OK


# -- bench ------------------------------------------------------------------------------


def cmd_bench(args) -> int:
    rows = []
    for index, g in enumerate(read_graphs(args.input, args.format)):
        best_time = None
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            s = stats(g, Budget(args.budget))
            dt = time.perf_counter() - t0
            best_time = dt if best_time is None else min(best_time, dt)
        rows.append({"index": index, "n": g.n, "m": g.num_edges, "N_digits": len(str(s.count)),
                     "seconds": round(best_time, 6)})
    report = {
        "graphs": len(rows),
        "total_seconds": round(sum(r["seconds"] for r in rows), 6),
        "max_seconds": max((r["seconds"] for r in rows), default=0.0),
        "runs": rows,
    }
    _emit_report(args, report, rows, BENCH_CSV_COLUMNS)
    return EXIT_OK


# -- mine ---------------------------------------------------------------------------------


def cmd_mine(args) -> int:
    report = mine_exceptions_twice(read_graphs(args.input, args.format), args.mode).to_json()
    _emit_report(args, report, report["exceptions"], MINE_CSV_COLUMNS)
    return EXIT_OK


# -- plumbing ---------------------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="connsets", description="Exact statistics of connected vertex sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_output: str = "jsonl") -> None:
        p.add_argument("--input", default="-", help="input file, or - for stdin (default)")
        p.add_argument("--format", choices=["graph6", "edges", "family"], default="graph6")
        p.add_argument("--workers", type=_positive, default=1)
        p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="max recursion nodes per graph")
        p.add_argument("--out", default="-", help="output file, or - for stdout (default)")
        p.add_argument("--output-format", choices=["json", "jsonl", "csv"], default=default_output)

    p = sub.add_parser("compute", help="N, S, A, D per graph")
    common(p)
    p.add_argument("--profile", action="store_true", help="include N(G,x) for every vertex")
    p.add_argument("--near-tree", action="store_true", help="include the near-tree class")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run the statement suite over a graph stream")
    common(p)
    p.add_argument("--statements", default="all", help="comma-separated statement ids, or 'all'")
    p.add_argument("--timings", action="store_true", help="add runtimes to the summary (non-deterministic)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="extremal A or D over a stream")
    common(p)
    p.add_argument("--objective", choices=["A", "D"], default="D")
    p.add_argument("--direction", choices=["min", "max"], default="min")
    p.add_argument("--min-degree", type=int, default=0, help="only consider graphs with this minimum degree")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bench", help="time the exact statistics")
    common(p)
    p.add_argument("--repeat", type=_positive, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("mine", help="list (graph, x) pairs with N(G,x) < 2n")
    common(p)
    p.add_argument("--mode", choices=["tree", "graph"], default="tree")
    p.set_defaults(func=cmd_mine)
    return parser


def main(argv: list[str] | None = None, *, registry: dict[str, Statement] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.out_fh = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8", newline="")
    try:
        if args.func is cmd_verify:
            return cmd_verify(args, registry)
        return args.func(args)
    except InputError as exc:
        args.out_fh.flush()
        where = f"line {exc.line}: " if exc.line is not None else ""
        print(f"error: {where}{exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        args.out_fh.flush()
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    finally:
        if args.out_fh is not sys.stdout:
            args.out_fh.close()


if __name__ == "__main__":
    sys.exit(main())

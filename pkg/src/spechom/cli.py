"""Command-line entry point.

    spechom analyze --gen complete:n=3 --k 2..3 --format markdown
    spechom analyze --input grid.edges --k 2 --cut-mode both
    spechom sweep --gen er:n=12 --vary p=0.1,0.2,0.3 --seeds 20 --k 3
    spechom oracle-check
    spechom --ledger
"""

from __future__ import annotations

import argparse
import sys

from .connectivity import DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET, Budget
from .errors import SpechomError
from .harness import (
    AnalysisConfig,
    SweepConfig,
    analyze_command,
    ledger_text,
    oracle_check,
    parse_k_values,
    sweep_command,
)
from .report import ANALYZE_COLUMNS, SWEEP_COLUMNS, render, to_json


def _common(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--k", action="append", default=None, metavar="K",
                   help="k value, list '2,3' or range '2..5'; repeatable")
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--variant", choices=("statement", "proof", "both"), default="statement")
    p.add_argument("--cut-mode", choices=("size", "count", "both"), default="size")
    p.add_argument("--l2k", choices=("second", "nonzero"), default="second")
    p.add_argument("--format", choices=("json", "csv", "markdown"), default=default_format)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spechom",
        description="Spectral, homological and exact cut measures of graph resilience.",
    )
    parser.add_argument("--ledger", action="store_true",
                        help="print the conventions behind each report column and exit")
    sub = parser.add_subparsers(dest="command")

    pa = sub.add_parser("analyze", help="bound-vs-actual table for one graph")
    src = pa.add_mutually_exclusive_group()
    src.add_argument("--input", help="edge-list file")
    src.add_argument("--gen", help="generator spec, e.g. er:n=20,p=0.3,seed=1")
    src.add_argument("--facets", help="facet-list file (explicit complex)")
    pa.add_argument("--seed", type=int, default=None,
                    help="seed for --gen when the spec has none")
    _common(pa, "json")

    ps = sub.add_parser("sweep", help="aggregate over seeded random graphs")
    ps.add_argument("--gen", required=True, help="random family template, e.g. er:n=12,p=0.2")
    ps.add_argument("--vary", default=None,
                    help="NAME=V1,V2,... ; 'p=log:0.5,1,2' gives multiples of log(n)/n")
    ps.add_argument("--seeds", type=int, default=20, help="graphs per parameter value")
    ps.add_argument("--seed", type=int, default=0, help="master seed")
    ps.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    _common(ps, "csv")

    po = sub.add_parser("oracle-check", help="branch and bound vs exhaustive oracle, n <= 8")
    po.add_argument("--max-n", type=int, default=8)
    po.add_argument("--max-edges", type=int, default=20)
    po.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.ledger:
        sys.stdout.write(ledger_text())
        return 0
    if args.command is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        if args.command == "oracle-check":
            res = oracle_check(args.max_n, args.max_edges,
                               Budget(args.node_budget, DEFAULT_TIME_BUDGET))
            print(f"graphs: {res['graphs']}  passed: {res['passed']}  failed: {res['failed']}")
            for f in res["failures"]:
                print(f"  FAIL {f}", file=sys.stderr)
            return 0 if res["failed"] == 0 else 1
        ks = parse_k_values(args.k) if args.k is not None else None
        if args.command == "analyze":
            cfg = AnalysisConfig(
                input=args.input, gen=args.gen, facets=args.facets,
                k_values=ks if ks is not None else [2], max_dim=args.max_dim,
                variant=args.variant, cut_mode=args.cut_mode, l2k=args.l2k,
                node_budget=args.node_budget, time_budget=args.time_budget,
                format=args.format, seed=args.seed,
            )
            doc, rows = analyze_command(cfg)
            text = render(doc, rows, ANALYZE_COLUMNS, args.format)
        else:
            cfg = SweepConfig(
                gen=args.gen, vary=args.vary, seeds=args.seeds,
                k_values=ks if ks is not None else [3], max_dim=args.max_dim,
                variant=args.variant, cut_mode=args.cut_mode, l2k=args.l2k,
                node_budget=args.node_budget, time_budget=args.time_budget,
                format=args.format, seed=args.seed, jobs=args.jobs,
            )
            doc, rows = sweep_command(cfg)
            text = render(doc, rows, SWEEP_COLUMNS, args.format)
        _emit(text, args.out)
    except SpechomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        name = exc.filename or ""
        print(f"error: cannot read/write {name}: {exc.strerror or exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``alibi-query <subcommand> ...``.

Exit status 0 means the query ran (the verdict is in the output); 1 means an
operational error such as a bad input file or unknown label; 2 is a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .core import Bead, DatabaseError
from .engine import bench, load_database, run_alibi, run_alibi_at
from .predicate import beads_intersect


def _cmd_load_check(args: argparse.Namespace) -> int:
    db = load_database(args.path, args.format)
    summary = {
        "samples": len(db),
        "labels": {
            str(label): {"samples": len(rows), "t_start": rows[0].t, "t_end": rows[-1].t}
            for label, rows in db.groups.items()
        },
    }
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        print(f"ok: {summary['samples']} samples, {len(summary['labels'])} labels")
        for label, info in summary["labels"].items():
            print(f"  {label}: {info['samples']} samples, t in [{info['t_start']}, {info['t_end']}]")
    return 0


def _cmd_alibi(args: argparse.Namespace) -> int:
    db = load_database(args.db, args.format)
    report = run_alibi(db, args.label_a, args.label_b, exhaustive=args.exhaustive, prune=not args.naive)
    if args.json:
        print(report.to_json())
    else:
        verdict = "alibi" if report.verdict["alibi"] else "no alibi (could have met)"
        print(f"{args.label_a} vs {args.label_b}: {verdict}")
        print(
            f"  pairs considered {report.pairs_considered}, pruned {report.pairs_pruned}, "
            f"evaluated {report.pairs_evaluated}"
        )
        for c in report.cases:
            print(f"  beads {c['a']} x {c['b']}: case {c['case']}, witness {c['witness']}")
    return 0


def _cmd_alibi_at(args: argparse.Namespace) -> int:
    db = load_database(args.db, args.format)
    report = run_alibi_at(db, args.label_a, args.label_b, args.t0)
    if args.json:
        print(report.to_json())
    else:
        met = report.verdict["met_possible"]
        print(f"{args.label_a} vs {args.label_b} at t={args.t0}: {'could have met' if met else 'alibi'}")
    return 0


def _cmd_bead(args: argparse.Namespace) -> int:
    v = args.values
    b1, b2 = Bead.of(*v[:7]), Bead.of(*v[7:])
    res = beads_intersect(b1, b2)
    out = {
        "intersects": res.intersects,
        "case": res.fired_case.value,
        "witness": None if res.witness is None else list(res.witness.as_tuple()),
    }
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        line = f"intersects: {str(res.intersects).lower()} (case {res.fired_case.value})"
        if res.witness is not None:
            line += f" witness t={res.witness.t:.12g} x={res.witness.x:.12g} y={res.witness.y:.12g}"
        print(line)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    report = bench(pairs=args.pairs, seed=args.seed, table=args.table, slices=args.slices)
    if args.json:
        print(report.to_json())
    else:
        s, t = report.stats, report.timings
        print(f"pairs {report.pairs_evaluated} ({s['source']}), seed {s['seed']}")
        print(f"  agree {s['agree']}, disagree {s['disagree']}, unreliable {s['unreliable']}")
        print(f"  agreement {report.verdict['agreement']:.4%}")
        print(f"  analytic median {t['median_ns'] / 1e3:.1f} us, p95 {t['p95_ns'] / 1e3:.1f} us")
        print(f"  oracle median {s['oracle_median_ns'] / 1e6:.2f} ms")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alibi-query", description="Alibi queries on moving-object samples.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_db(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default=None, help="input format (default: by suffix)")
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("load-check", help="validate a sample file and summarize it")
    p.add_argument("path")
    add_db(p)
    p.set_defaults(func=_cmd_load_check)

    p = sub.add_parser("alibi", help="could two objects have met at any time?")
    p.add_argument("db")
    p.add_argument("label_a")
    p.add_argument("label_b")
    p.add_argument("--exhaustive", action="store_true", help="report every meeting bead pair")
    p.add_argument("--naive", action="store_true", help="test all bead pairs without time pruning")
    add_db(p)
    p.set_defaults(func=_cmd_alibi)

    p = sub.add_parser("alibi-at", help="could two objects have met at time t0?")
    p.add_argument("db")
    p.add_argument("label_a")
    p.add_argument("label_b")
    p.add_argument("t0", type=float)
    add_db(p)
    p.set_defaults(func=_cmd_alibi_at)

    p = sub.add_parser("bead", help="intersect two beads given as t1 x1 y1 t2 x2 y2 v1 t3 x3 y3 t4 x4 y4 v2")
    p.add_argument("values", nargs=14, type=float, metavar="R")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bead)

    p = sub.add_parser("bench", help="time the predicate and compare it with the sampling oracle")
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--table", action="store_true", help="use the twelve fixed experiment pairs")
    p.add_argument("--slices", type=int, default=2048, help="oracle time slices per pair")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DatabaseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end.

Exit codes: 0 the property holds (or the pair is compatible), 1 it fails
(confirmed), 2 inconclusive or unknown, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures
from .analysis import (
    LEFT,
    RIGHT,
    DeadlockReport,
    autonomous_df,
    half_duplex_check,
    io_separated,
    obs_io_separated,
    sync_deadlocks,
)
from .compat import (
    STRONG,
    WEAK,
    async_compat_bounded,
    async_deadlock_bounded,
    completeness_x,
    strong_sync,
    wac,
    weak_sync,
)
from .compose import async_explore, criterion_product_left, criterion_product_right, sync_product
from .errors import IotsError
from .formats import emit_dot, emit_json, emit_report_json, error_document, load_iots
from .pipeline import NEGATIVE, POSITIVE, decide
from .verdict import Status, Verdict

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"bound must be positive, got {value}")
    return value


def verdict_exit(verdict: Verdict) -> int:
    return {Status.HOLDS: EXIT_HOLDS, Status.FAILS: EXIT_FAILS}.get(verdict.status, EXIT_UNKNOWN)


def deadlock_exit(report: DeadlockReport) -> int:
    if not report.empty:
        return EXIT_FAILS
    if report.exhaustive is False:
        return EXIT_UNKNOWN
    return EXIT_HOLDS


def _print_verdict(name: str, verdict: Verdict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(emit_json({"check": name, **verdict.to_dict()}))
    else:
        print(f"{name}: {verdict.describe()}")


def _print_deadlocks(name: str, report: DeadlockReport, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(emit_json({"check": name, **report.to_dict()}))
        return
    if report.empty:
        status = "no deadlock" if report.exhaustive is not False else f"no deadlock within bound {report.bound}"
        print(f"{name}: {status}")
    for entry in report.deadlocked:
        print(f"{name}: deadlock at {entry.location} after {' '.join(entry.trace) or 'ε'}")


def cmd_check(args) -> int:
    a = load_iots(args.a)
    kind = args.kind
    if kind in ("io-sep", "obs-io-sep"):
        verdict = (io_separated if kind == "io-sep" else obs_io_separated)(a)
    else:
        if args.b is None:
            raise UsageError(f"check {kind} needs two components")
        b = load_iots(args.b)
        if kind == "sync-strong":
            verdict = strong_sync(a, b)
        elif kind == "sync-weak":
            verdict = weak_sync(a, b)
        elif kind == "half-duplex":
            verdict = half_duplex_check(a, b)
        elif kind == "wac":
            verdict = wac(a, b)
        elif kind == "completeness":
            verdict = completeness_x(a, b, _need_bound(args))
        else:
            verdict = async_compat_bounded(a, b, _need_bound(args), args.mode)
    _print_verdict(kind, verdict, args.json)
    return verdict_exit(verdict)


def _need_bound(args) -> int:
    if args.bound is None:
        raise UsageError(f"{args.kind} needs --bound K")
    return args.bound


def cmd_deadlock(args) -> int:
    a, b = load_iots(args.a), load_iots(args.b)
    if args.kind == "sync":
        report = sync_deadlocks(a, b)
    elif args.kind == "async":
        report = async_deadlock_bounded(a, b, _need_bound(args))
    else:
        verdict = autonomous_df(a, b, args.side)
        _print_verdict(f"autonomous-{args.side}", verdict, args.json)
        return verdict_exit(verdict)
    _print_deadlocks(f"deadlock-{args.kind}", report, args.json)
    return deadlock_exit(report)


def cmd_pipeline(args) -> int:
    a, b = load_iots(args.a), load_iots(args.b)
    report = decide(a, b, args.bound, args.mode, force_bounded=args.force_bounded)
    text = emit_report_json(report)
    if args.json:
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")
    if args.dot:
        out = Path(args.dot)
        out.mkdir(parents=True, exist_ok=True)
        graphs = {
            "sync": sync_product(a, b),
            "left": criterion_product_left(a, b),
            "right": criterion_product_right(a, b),
        }
        if report.checks.get("async_deadlocks") is not None or args.force_bounded:
            graphs["async"] = async_explore(a, b, args.bound)
        for name, graph in graphs.items():
            (out / f"{name}.dot").write_text(emit_dot(graph, name), encoding="utf-8")
    if args.json != "-":
        print(f"compatibility: {report.conclusion} [{', '.join(report.justification)}]")
        print(f"deadlock: {report.deadlock_conclusion} [{', '.join(report.deadlock_justification)}]")
        witness = report.counterexample()
        if witness is not None:
            print(f"counterexample: {witness.action} at {witness.location} after {' '.join(witness.trace) or 'ε'}")
    if report.conclusion in POSITIVE:
        return EXIT_HOLDS
    if report.conclusion in NEGATIVE:
        return EXIT_FAILS
    return EXIT_UNKNOWN


def cmd_export(args) -> int:
    a, b = load_iots(args.a), load_iots(args.b)
    if args.product == "sync":
        graph = sync_product(a, b)
    elif args.product == "left":
        graph = criterion_product_left(a, b)
    elif args.product == "right":
        graph = criterion_product_right(a, b)
    else:
        graph = async_explore(a, b, args.bound)
    text = emit_dot(graph, args.product)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_HOLDS


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name in fixtures.names():
            print(name)
        for pair, (left, right) in sorted(fixtures.PAIRS.items()):
            print(f"pair {pair}: {left} {right}")
        return EXIT_HOLDS
    if args.directory is None:
        raise UsageError("fixtures export needs a directory")
    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    for name in fixtures.names():
        (out / f"{name}.iots").write_text(fixtures.text(name), encoding="utf-8")
    return EXIT_HOLDS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iocompat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="run a single check")
    check.add_argument(
        "kind",
        choices=["sync-strong", "sync-weak", "half-duplex", "io-sep", "obs-io-sep",
                 "wac", "completeness", "async"],
    )
    check.add_argument("a")
    check.add_argument("b", nargs="?")
    check.add_argument("--bound", type=positive_int)
    check.add_argument("--mode", choices=[STRONG, WEAK], default=WEAK)
    check.add_argument("--json", action="store_true", help="print the verdict as JSON")
    check.set_defaults(func=cmd_check)

    deadlock = sub.add_parser("deadlock", help="look for deadlocks")
    deadlock.add_argument("kind", choices=["sync", "async", "autonomous"])
    deadlock.add_argument("a")
    deadlock.add_argument("b")
    deadlock.add_argument("--bound", type=positive_int)
    deadlock.add_argument("--side", choices=[LEFT, RIGHT], default=LEFT)
    deadlock.add_argument("--json", action="store_true")
    deadlock.set_defaults(func=cmd_deadlock)

    pipeline = sub.add_parser("pipeline", help="run the full decision procedure")
    pipeline.add_argument("a")
    pipeline.add_argument("b")
    pipeline.add_argument("--bound", type=positive_int, required=True)
    pipeline.add_argument("--mode", choices=[STRONG, WEAK], default=WEAK)
    pipeline.add_argument("--json", metavar="PATH", help="write the report; '-' for stdout")
    pipeline.add_argument("--dot", metavar="DIR", help="write product graphs as DOT files")
    pipeline.add_argument("--force-bounded", action="store_true",
                          help="run bounded exploration even when a theorem decides")
    pipeline.set_defaults(func=cmd_pipeline)

    export = sub.add_parser("export", help="export a product graph")
    export.add_argument("format", choices=["dot"])
    export.add_argument("a")
    export.add_argument("b")
    export.add_argument("--product", choices=["sync", "left", "right", "async"], default="sync")
    export.add_argument("--bound", type=positive_int, default=1)
    export.add_argument("-o", "--output")
    export.set_defaults(func=cmd_export)

    fx = sub.add_parser("fixtures", help="list or export the bundled examples")
    fx.add_argument("action", choices=["list", "export"])
    fx.add_argument("directory", nargs="?")
    fx.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except (IotsError, OSError, UnicodeDecodeError) as exc:
        sys.stdout.write(emit_json(error_document(exc)))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

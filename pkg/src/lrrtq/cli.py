"""Command-line front end: ``lrrtq {infer,simulate,compare,surface}``."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from . import fuzzy, report
from .formats import FormatError, load_fis, load_workload
from .preset import ABT, NOP, sample_surface
from .scheduler import SchedulingError, compare, rr_fixed, rr_fuzzy
from .ticks import fmt, parse_ticks


class CliError(Exception):
    pass


def _quantum(text: str | None) -> int:
    if text is None:
        raise CliError("--policy fixed requires --quantum")
    try:
        q = parse_ticks(text)
    except ValueError as exc:
        raise CliError(f"--quantum: {exc}") from None
    if q <= 0:
        raise CliError("--quantum must be positive")
    return q


def cmd_infer(args) -> str:
    fis = load_fis(args.fis)
    return fmt(fuzzy.infer(fis, {NOP: args.nop, ABT: args.abt})) + "\n"


def cmd_simulate(args) -> str:
    workload = load_workload(args.workload)
    if args.policy == "fixed":
        quantum = _quantum(args.quantum)
        result = rr_fixed(workload, quantum)
        title = f"Round robin, fixed quantum {fmt(quantum / 10_000)}"
        notes = report.paper_notes(workload, "fixed", result, quantum)
    else:
        result = rr_fuzzy(workload, load_fis(args.fis))
        title = "Sorted round robin, LRRTQ quantum"
        notes = report.paper_notes(workload, "proposed", result, None)
    return report.render_schedule(result, workload, title, notes, args.format)


def cmd_compare(args) -> str:
    workload = load_workload(args.workload)
    cmp = compare(workload, load_fis(args.fis), _quantum(args.quantum))
    return report.render_comparison(cmp, workload, args.format)


def cmd_surface(args) -> str:
    if args.nop_steps < 2 or args.abt_steps < 2:
        raise CliError("--nop-steps and --abt-steps must be at least 2")
    text = report.render_surface(sample_surface(load_fis(args.fis), args.nop_steps, args.abt_steps))
    out_dir = os.path.dirname(os.path.abspath(args.out))
    try:
        fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=".surface-", suffix=".tmp")
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc.strerror}") from None
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, args.out)
    except OSError as exc:
        os.unlink(tmp)
        raise CliError(f"cannot write {args.out}: {exc.strerror}") from None
    return f"wrote {args.nop_steps}x{args.abt_steps} surface to {args.out}\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrrtq", description="Fuzzy time-quantum inference and round-robin simulation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("infer", help="infer a time quantum from queue length and mean burst")
    p.add_argument("--nop", type=float, required=True, help="number of ready processes")
    p.add_argument("--abt", type=float, required=True, help="average burst time")
    p.add_argument("--fis", help="FIS definition file (default: bundled lrrtq.fis)")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("simulate", help="run one scheduling policy on a workload")
    p.add_argument("--workload", required=True, help="CSV with header pid,arrival,burst")
    p.add_argument("--policy", choices=["fixed", "fuzzy"], required=True)
    p.add_argument("--quantum", help="fixed quantum (policy=fixed only)")
    p.add_argument("--fis")
    p.add_argument("--format", choices=["table", "csv"], default="table")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="fixed-quantum RR vs the LRRTQ algorithm")
    p.add_argument("--workload", required=True)
    p.add_argument("--quantum", required=True)
    p.add_argument("--fis")
    p.add_argument("--format", choices=["table", "csv"], default="table")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("surface", help="export the inference surface as a CSV grid")
    p.add_argument("--nop-steps", type=int, required=True)
    p.add_argument("--abt-steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--fis")
    p.set_defaults(func=cmd_surface)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        output = args.func(args)
    except (CliError, FormatError, SchedulingError, fuzzy.FuzzyError) as exc:
        print(f"lrrtq {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"lrrtq {args.command}: error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 1
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())

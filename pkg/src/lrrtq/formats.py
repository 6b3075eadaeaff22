"""Text formats: workload CSV and the line-oriented FIS definition."""

from __future__ import annotations

import csv
from importlib import resources
from typing import Iterable, Sequence

from .fuzzy import (
    DEFAULT_SAMPLE_POINTS,
    FisDefinition,
    FuzzyError,
    FuzzyRule,
    LinguisticVariable,
    TrapezoidalMF,
)
from .scheduler import ProcessSpec
from .ticks import fmt_ticks, parse_ticks

WORKLOAD_HEADER = ["pid", "arrival", "burst"]


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def _lines(text: str) -> list[str]:
    if text.startswith("﻿"):
        text = text[1:]
    return text.replace("\r\n", "\n").replace("\r", "\n").split("\n")


def parse_workload(text: str, source: str | None = None) -> list[ProcessSpec]:
    lines = _lines(text)
    rows = [(n, line) for n, line in enumerate(lines, start=1) if line.strip()]
    if not rows:
        raise FormatError("empty workload file", source=source)

    header_no, header = rows[0]
    if [c.strip() for c in header.split(",")] != WORKLOAD_HEADER:
        raise FormatError(f"header must be exactly {','.join(WORKLOAD_HEADER)!r}", header_no, source)

    procs = []
    seen: dict[str, int] = {}
    for lineno, line in rows[1:]:
        cells = next(csv.reader([line]))
        if len(cells) != 3:
            raise FormatError(f"expected 3 fields, got {len(cells)}", lineno, source)
        pid, arrival_text, burst_text = (c.strip() for c in cells)
        if not pid:
            raise FormatError("empty pid", lineno, source)
        if pid in seen:
            raise FormatError(f"duplicate pid {pid!r} (first on line {seen[pid]})", lineno, source)
        try:
            arrival = parse_ticks(arrival_text)
            burst = parse_ticks(burst_text)
        except ValueError as exc:
            raise FormatError(str(exc), lineno, source) from None
        if arrival < 0:
            raise FormatError(f"negative arrival time for {pid}", lineno, source)
        if burst <= 0:
            raise FormatError(f"non-positive burst time for {pid}", lineno, source)
        seen[pid] = lineno
        procs.append(ProcessSpec(pid, arrival, burst))

    if not procs:
        raise FormatError("workload has no processes", source=source)
    return procs


def serialize_workload(workload: Iterable[ProcessSpec]) -> str:
    out = [",".join(WORKLOAD_HEADER)]
    for p in workload:
        out.append(f"{p.pid},{_compact(fmt_ticks(p.arrival))},{_compact(fmt_ticks(p.burst))}")
    return "\n".join(out) + "\n"


def _compact(decimal_text: str) -> str:
    if "." in decimal_text:
        decimal_text = decimal_text.rstrip("0").rstrip(".")
    return decimal_text


def _number(token: str, lineno: int, source: str | None) -> float:
    try:
        return float(token)
    except ValueError:
        raise FormatError(f"not a number: {token!r}", lineno, source) from None


def parse_fis(text: str, source: str | None = None) -> FisDefinition:
    inputs: list[LinguisticVariable] = []
    output: LinguisticVariable | None = None
    pending_rules: list[tuple[int, list[str], str, float]] = []
    sample_points = DEFAULT_SAMPLE_POINTS

    # the variable currently collecting terms: (kind, name, lo, hi, terms, line)
    current = None

    def close_current():
        nonlocal output, current
        if current is None:
            return
        kind, name, lo, hi, terms, lineno = current
        try:
            var = LinguisticVariable(name, lo, hi, tuple(terms))
        except FuzzyError as exc:
            raise FormatError(str(exc), lineno, source) from None
        if kind == "input":
            inputs.append(var)
        else:
            output = var
        current = None

    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, *args = line.split()

        if keyword in ("input", "output"):
            close_current()
            if len(args) != 3:
                raise FormatError(f"expected '{keyword} <name> <lo> <hi>'", lineno, source)
            if keyword == "output" and output is not None:
                raise FormatError("only one output variable is supported", lineno, source)
            if keyword == "input" and pending_rules:
                raise FormatError("input declared after rules", lineno, source)
            lo, hi = (_number(a, lineno, source) for a in args[1:])
            current = (keyword, args[0], lo, hi, [], lineno)

        elif keyword == "term":
            if current is None:
                raise FormatError("term outside an input/output block", lineno, source)
            if len(args) != 5:
                raise FormatError("expected 'term <label> <p1> <p2> <p3> <p4>'", lineno, source)
            points = [_number(a, lineno, source) for a in args[1:]]
            try:
                mf = TrapezoidalMF(*points)
            except FuzzyError as exc:
                raise FormatError(str(exc), lineno, source) from None
            current[4].append((args[0], mf))

        elif keyword == "rule":
            close_current()
            if "=>" not in args:
                raise FormatError("expected 'rule <t1> <t2> ... => <tout> [weight]'", lineno, source)
            arrow = args.index("=>")
            lhs, rhs = args[:arrow], args[arrow + 1:]
            if len(rhs) not in (1, 2):
                raise FormatError("expected one output term and an optional weight", lineno, source)
            weight = _number(rhs[1], lineno, source) if len(rhs) == 2 else 1.0
            pending_rules.append((lineno, lhs, rhs[0], weight))

        elif keyword == "samples":
            if len(args) != 1 or not args[0].isdigit():
                raise FormatError("expected 'samples <count>'", lineno, source)
            sample_points = int(args[0])

        else:
            raise FormatError(f"unknown directive {keyword!r}", lineno, source)

    close_current()
    if not inputs:
        raise FormatError("no input variables declared", source=source)
    if output is None:
        raise FormatError("no output variable declared", source=source)

    rules = []
    for lineno, lhs, out_label, weight in pending_rules:
        if len(lhs) != len(inputs):
            raise FormatError(
                f"rule has {len(lhs)} antecedent labels but there are {len(inputs)} inputs",
                lineno, source,
            )
        for var, label in zip(inputs, lhs):
            if label not in var.labels:
                raise FormatError(f"unknown term {label!r} for input {var.name}", lineno, source)
        if out_label not in output.labels:
            raise FormatError(f"unknown term {out_label!r} for output {output.name}", lineno, source)
        try:
            rules.append(
                FuzzyRule(tuple((v.name, l) for v, l in zip(inputs, lhs)), (output.name, out_label), weight)
            )
        except FuzzyError as exc:
            raise FormatError(str(exc), lineno, source) from None

    try:
        return FisDefinition(tuple(inputs), output, tuple(rules), sample_points)
    except FuzzyError as exc:
        raise FormatError(str(exc), source=source) from None


def serialize_fis(fis: FisDefinition) -> str:
    out = []
    if fis.sample_points != DEFAULT_SAMPLE_POINTS:
        out += [f"samples {fis.sample_points}", ""]
    for kind, var in [("input", v) for v in fis.inputs] + [("output", fis.output)]:
        out.append(f"{kind} {var.name} {var.lo!r} {var.hi!r}")
        for label, mf in var.terms:
            out.append(f"term {label} " + " ".join(repr(p) for p in mf.breakpoints))
        out.append("")
    names = [v.name for v in fis.inputs]
    for rule in fis.rules:
        by_var = dict(rule.antecedents)
        if sorted(by_var) != sorted(names):
            raise FormatError("rules must name every input exactly once to be written as text")
        lhs = " ".join(by_var[n] for n in names)
        out.append(f"rule {lhs} => {rule.consequent[1]} {rule.weight!r}")
    return "\n".join(out) + "\n"


def default_fis_text() -> str:
    return resources.files("lrrtq").joinpath("data/lrrtq.fis").read_text(encoding="utf-8")


def load_fis(path: str | None = None) -> FisDefinition:
    if path is None:
        return parse_fis(default_fis_text(), source="lrrtq.fis")
    with open(path, encoding="utf-8") as fh:
        return parse_fis(fh.read(), source=path)


def load_workload(path: str) -> list[ProcessSpec]:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_workload(fh.read(), source=path)

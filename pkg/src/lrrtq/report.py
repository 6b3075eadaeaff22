"""Plain-text and CSV rendering of schedules, comparisons and surfaces."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal
from typing import Sequence

from .preset import SurfaceGrid
from .scheduler import Comparison, ProcessSpec, ScheduleResult
from .ticks import fmt, fmt_ticks, round_half_up


@dataclass(frozen=True)
class PaperColumn:
    table: str
    label: str
    policy: str  # "fixed" or "proposed"
    quantum: int  # ticks the column was (effectively) run with
    waiting: str
    turnaround: str
    context_switches: int


# Published numerical cases, keyed by the sorted burst multiset (all arrivals 0).
PAPER_CASES: dict[tuple[int, ...], tuple[str, list[PaperColumn]]] = {
    (40000, 50000, 70000, 80000): ("Case 1", [
        PaperColumn("Table 2", "RR, q=2.6", "fixed", 26000, "15.3", "21.3", 10),
        PaperColumn("Table 2", "Proposed, LOTmQm 2.6", "proposed", 26119, "11.8", "17.8", 10),
    ]),
    (60000, 80000, 100000): ("Case 2", [
        PaperColumn("Table 3", "RR, q=2.6", "fixed", 26000, "14.5", "22.5", 9),
        PaperColumn("Table 3", "Proposed, q=2.6", "proposed", 26000, "11.8", "19.8", 9),
        PaperColumn("Table 3", "RR, LOTmQm printed 3.0 (raw 3.06)", "fixed", 30600, "12.8", "17.3", 8),
        PaperColumn("Table 3", "Proposed, LOTmQm printed 3.0", "proposed", 30511, "10.7", "18", 8),
    ]),
}


def paper_case(workload: Sequence[ProcessSpec]):
    if any(p.arrival for p in workload):
        return None
    return PAPER_CASES.get(tuple(sorted(p.burst for p in workload)))


def _check_cell(paper: str, ours) -> str:
    places = -Decimal(paper).as_tuple().exponent
    return "reproduced" if round_half_up(ours, places) == Decimal(paper) else "NOT reproduced"


def paper_notes(workload: Sequence[ProcessSpec], policy: str, result: ScheduleResult, quantum: int | None) -> list[str]:
    """Footnotes relating ``result`` to the matching published column, if any.

    ``quantum`` is the fixed quantum for fixed runs; proposed runs are matched
    by the quantum the fuzzy system actually produced.
    """
    found = paper_case(workload)
    if found is None:
        return []
    case, columns = found
    m = result.metrics
    if policy == "proposed":
        quantum = m.quanta_used[0][1] if m.quanta_used else None
    notes = []
    for col in columns:
        if col.policy != policy or col.quantum != quantum:
            continue
        w = _check_cell(col.waiting, m.avg_waiting)
        t = _check_cell(col.turnaround, m.avg_turnaround)
        notes.append(
            f"{case} {col.table} [{col.label}]: avg waiting {col.waiting} {w} "
            f"(here {fmt(m.avg_waiting, 2)}); avg turnaround {col.turnaround} {t} "
            f"(here {fmt(m.avg_turnaround, 2)}); published context switches {col.context_switches} "
            f"vs dispatches {m.dispatch_count} / pid changes {m.switch_count}"
        )
        published = Decimal(col.waiting) + sum(Decimal(p.burst) for p in workload) / len(workload) / 10_000
        if round_half_up(published, 1) != round_half_up(Decimal(col.turnaround), 1):
            notes.append(
                f"{case} {col.table} [{col.label}]: published turnaround {col.turnaround} is inconsistent "
                f"with its own waiting {col.waiting} + mean burst"
            )
    return notes


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = []
    for k, row in enumerate(rows):
        cells = [c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))]
        out.append("  ".join(cells).rstrip())
        if k == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out)


def _quanta_text(result: ScheduleResult) -> str:
    return ", ".join(f"{fmt_ticks(q)} @ t={fmt_ticks(t)}" for t, q in result.metrics.quanta_used)


def render_schedule(result: ScheduleResult, workload: Sequence[ProcessSpec], title: str,
                    notes: Sequence[str] = (), fmt_: str = "table") -> str:
    if fmt_ == "csv":
        return _schedule_csv(result, notes)
    m = result.metrics
    rows = [["pid", "arrival", "burst", "completion", "turnaround", "waiting"]]
    for p in m.processes:
        rows.append([p.pid] + [fmt_ticks(v) for v in (p.arrival, p.burst, p.completion, p.turnaround, p.waiting)])
    lines = [title, "", _table(rows), ""]
    lines.append(f"Average waiting time:     {fmt(m.avg_waiting)}")
    lines.append(f"Average turnaround time:  {fmt(m.avg_turnaround)}")
    lines.append(f"Dispatches:               {m.dispatch_count}")
    lines.append(f"Context switches:         {m.switch_count}")
    if m.quanta_used:
        lines.append(f"Quanta used:              {_quanta_text(result)}")
    lines += [f"* {n}" for n in notes]
    return "\n".join(lines) + "\n"


def _schedule_csv(result: ScheduleResult, notes: Sequence[str]) -> str:
    m = result.metrics
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    buf.write("# processes\n")
    w.writerow(["pid", "arrival", "burst", "completion", "turnaround", "waiting"])
    for p in m.processes:
        w.writerow([p.pid] + [fmt_ticks(v) for v in (p.arrival, p.burst, p.completion, p.turnaround, p.waiting)])
    buf.write("\n# summary\n")
    w.writerow(["metric", "value"])
    w.writerow(["avg_waiting", fmt(m.avg_waiting)])
    w.writerow(["avg_turnaround", fmt(m.avg_turnaround)])
    w.writerow(["dispatch_count", m.dispatch_count])
    w.writerow(["switch_count", m.switch_count])
    buf.write("\n# quanta\n")
    w.writerow(["time", "quantum"])
    for t, q in m.quanta_used:
        w.writerow([fmt_ticks(t), fmt_ticks(q)])
    buf.write("\n# trace\n")
    w.writerow(["pid", "start", "duration", "end", "reason"])
    for s in result.trace:
        w.writerow([s.pid, fmt_ticks(s.start), fmt_ticks(s.duration), fmt_ticks(s.end), s.reason_ended])
    for n in notes:
        buf.write(f"# note: {n}\n")
    return buf.getvalue()


def render_comparison(cmp: Comparison, workload: Sequence[ProcessSpec], fmt_: str = "table") -> str:
    fixed, fuzzy = cmp.fixed.metrics, cmp.fuzzy.metrics
    header = ["metric", f"RR q={fmt_ticks(cmp.fixed_quantum)}", "Proposed (LRRTQ)"]
    rows = [
        ["Average Waiting Time", fmt(fixed.avg_waiting), fmt(fuzzy.avg_waiting)],
        ["Average Turnaround Time", fmt(fixed.avg_turnaround), fmt(fuzzy.avg_turnaround)],
        ["Dispatches", str(fixed.dispatch_count), str(fuzzy.dispatch_count)],
        ["Context Switches (pid changes)", str(fixed.switch_count), str(fuzzy.switch_count)],
    ]
    notes = paper_notes(workload, "fixed", cmp.fixed, cmp.fixed_quantum)
    notes += paper_notes(workload, "proposed", cmp.fuzzy, None)
    quanta = _quanta_text(cmp.fuzzy)

    if fmt_ == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "rr_fixed", "proposed"])
        rows[0][0], rows[1][0], rows[2][0], rows[3][0] = "avg_waiting", "avg_turnaround", "dispatch_count", "switch_count"
        w.writerows(rows)
        w.writerow(["quantum", fmt_ticks(cmp.fixed_quantum), fmt_ticks(fuzzy.quanta_used[0][1])])
        for n in notes:
            buf.write(f"# note: {n}\n")
        return buf.getvalue()

    lines = [f"Inferred quantum: {quanta}", "", _table([header] + rows), ""]
    lines += [f"* {n}" for n in notes]
    return "\n".join(lines).rstrip("\n") + "\n"


def render_surface(grid: SurfaceGrid, corner: str = "LNOP\\LABT") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([corner] + [fmt(float(a)) for a in grid.abt_axis])
    for n, row in zip(grid.nop_axis, grid.values):
        w.writerow([fmt(float(n))] + [fmt(float(v)) for v in row])
    return buf.getvalue()

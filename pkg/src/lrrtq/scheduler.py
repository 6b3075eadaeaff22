"""Single-CPU round-robin simulation with fixed and fuzzy-inferred quanta.

All times are integer ticks (see :mod:`lrrtq.ticks`), so traces are exact and
runs are bit-for-bit reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .fuzzy import FisDefinition, infer
from .preset import ABT, NOP
from .ticks import TICKS_PER_UNIT, to_ticks

QUANTUM_EXPIRED = "quantum_expired"
COMPLETED = "completed"
REQUANTIZE = "requantize"


class SchedulingError(ValueError):
    pass


@dataclass(frozen=True)
class ProcessSpec:
    pid: str
    arrival: int  # ticks
    burst: int  # ticks

    def __post_init__(self) -> None:
        if self.arrival < 0:
            raise SchedulingError(f"{self.pid}: negative arrival time")
        if self.burst <= 0:
            raise SchedulingError(f"{self.pid}: burst time must be positive")


@dataclass(frozen=True)
class ExecutionSlice:
    pid: str
    start: int
    duration: int
    reason_ended: str

    @property
    def end(self) -> int:
        return self.start + self.duration


@dataclass(frozen=True)
class ProcessResult:
    pid: str
    arrival: int
    burst: int
    completion: int

    @property
    def turnaround(self) -> int:
        return self.completion - self.arrival

    @property
    def waiting(self) -> int:
        return self.turnaround - self.burst


@dataclass(frozen=True)
class ScheduleMetrics:
    processes: tuple[ProcessResult, ...]
    dispatch_count: int
    switch_count: int
    quanta_used: tuple[tuple[int, int], ...] = ()  # (time, quantum) in ticks

    def _mean(self, attr: str) -> Fraction:
        total = sum(getattr(p, attr) for p in self.processes)
        return Fraction(total, len(self.processes) * TICKS_PER_UNIT)

    # averages are exact, in time units
    @property
    def avg_waiting(self) -> Fraction:
        return self._mean("waiting")

    @property
    def avg_turnaround(self) -> Fraction:
        return self._mean("turnaround")

    @property
    def avg_burst(self) -> Fraction:
        return self._mean("burst")

    def process(self, pid: str) -> ProcessResult:
        for p in self.processes:
            if p.pid == pid:
                return p
        raise KeyError(pid)


class ScheduleResult(NamedTuple):
    trace: list[ExecutionSlice]
    metrics: ScheduleMetrics


def validate_workload(workload: Sequence[ProcessSpec]) -> None:
    if not workload:
        raise SchedulingError("workload is empty")
    seen = set()
    for p in workload:
        if p.pid in seen:
            raise SchedulingError(f"duplicate pid {p.pid!r}")
        seen.add(p.pid)


def compute_metrics(
    trace: Sequence[ExecutionSlice],
    workload: Sequence[ProcessSpec],
    quanta_used: Sequence[tuple[int, int]] = (),
) -> ScheduleMetrics:
    executed = {p.pid: 0 for p in workload}
    completion = {}
    for s in trace:
        if s.pid not in executed:
            raise SchedulingError(f"trace mentions unknown pid {s.pid!r}")
        executed[s.pid] += s.duration
        completion[s.pid] = max(completion.get(s.pid, 0), s.end)
    for p in workload:
        if executed[p.pid] != p.burst:
            raise SchedulingError(
                f"{p.pid}: trace runs {executed[p.pid]} ticks but burst is {p.burst}"
            )

    results = tuple(ProcessResult(p.pid, p.arrival, p.burst, completion[p.pid]) for p in workload)
    switches = sum(1 for a, b in zip(trace, trace[1:]) if a.pid != b.pid)
    return ScheduleMetrics(results, len(trace), switches, tuple(quanta_used))


class _Arrivals:
    """Processes not yet admitted, in (arrival, input order)."""

    def __init__(self, workload: Sequence[ProcessSpec]):
        self._pending = deque(sorted(workload, key=lambda p: p.arrival))  # stable

    def __bool__(self) -> bool:
        return bool(self._pending)

    def next_time(self) -> int:
        return self._pending[0].arrival

    def admit(self, now: int, queue: deque) -> int:
        n = 0
        while self._pending and self._pending[0].arrival <= now:
            queue.append(self._pending.popleft())
            n += 1
        return n


def rr_fixed(workload: Sequence[ProcessSpec], quantum: int) -> ScheduleResult:
    """Classic round robin with a constant quantum (in ticks).

    A process whose quantum expires rejoins the tail after everything that
    arrived up to and including the expiry instant.
    """
    validate_workload(workload)
    if quantum <= 0:
        raise SchedulingError(f"quantum must be positive, got {quantum} ticks")

    arrivals = _Arrivals(workload)
    remaining = {p.pid: p.burst for p in workload}
    queue: deque[ProcessSpec] = deque()
    trace = []
    now = 0
    arrivals.admit(now, queue)
    while queue or arrivals:
        if not queue:
            now = arrivals.next_time()
            arrivals.admit(now, queue)
            continue
        proc = queue.popleft()
        run = min(quantum, remaining[proc.pid])
        start, now = now, now + run
        remaining[proc.pid] -= run
        arrivals.admit(now, queue)
        if remaining[proc.pid]:
            queue.append(proc)
            trace.append(ExecutionSlice(proc.pid, start, run, QUANTUM_EXPIRED))
        else:
            trace.append(ExecutionSlice(proc.pid, start, run, COMPLETED))
    return ScheduleResult(trace, compute_metrics(trace, workload))


QuantumPicker = Callable[[int, Fraction], int]


def _sorted_rr(workload: Sequence[ProcessSpec], pick_quantum: QuantumPicker) -> ScheduleResult:
    validate_workload(workload)
    order = {p.pid: i for i, p in enumerate(workload)}
    arrivals = _Arrivals(workload)
    remaining = {p.pid: p.burst for p in workload}
    queue: deque[ProcessSpec] = deque()
    trace = []
    quanta = []
    now = 0
    quantum = 0
    arrivals.admit(now, queue)
    requantize = True
    while queue or arrivals:
        if not queue:
            now = arrivals.next_time()
            arrivals.admit(now, queue)
            requantize = True
            continue
        if requantize:
            queue = deque(sorted(queue, key=lambda p: (remaining[p.pid], order[p.pid])))
            mean_burst = Fraction(sum(remaining[p.pid] for p in queue), len(queue) * TICKS_PER_UNIT)
            quantum = pick_quantum(len(queue), mean_burst)
            if quantum <= 0:
                raise SchedulingError(f"inferred quantum {quantum} ticks is not positive")
            quanta.append((now, quantum))
            requantize = False

        proc = queue.popleft()
        run = min(quantum, remaining[proc.pid])
        start, now = now, now + run
        remaining[proc.pid] -= run
        # arrivals never cut a slice short; they trigger a fresh sort and quantum afterwards
        if arrivals.admit(now, queue):
            requantize = True
        if not remaining[proc.pid]:
            reason = COMPLETED
        else:
            queue.append(proc)
            reason = REQUANTIZE if requantize else QUANTUM_EXPIRED
        trace.append(ExecutionSlice(proc.pid, start, run, reason))
    return ScheduleResult(trace, compute_metrics(trace, workload, quanta))


def rr_fuzzy(workload: Sequence[ProcessSpec], fis: FisDefinition) -> ScheduleResult:
    """Burst-sorted round robin whose quantum comes from ``fis``.

    The quantum is inferred from the ready-queue length and its mean remaining
    burst at the start and after every batch of arrivals.
    """

    def pick(n: int, mean_burst: Fraction) -> int:
        return to_ticks(infer(fis, {NOP: float(n), ABT: float(mean_burst)}))

    return _sorted_rr(workload, pick)


def rr_sorted_fixed(workload: Sequence[ProcessSpec], quantum: int) -> ScheduleResult:
    """Burst-sorted round robin with a constant quantum instead of an inferred one."""
    if quantum <= 0:
        raise SchedulingError(f"quantum must be positive, got {quantum} ticks")
    return _sorted_rr(workload, lambda n, mean_burst: quantum)


@dataclass(frozen=True)
class Comparison:
    fixed_quantum: int
    fixed: ScheduleResult
    fuzzy: ScheduleResult

    @property
    def inferred_quanta(self) -> tuple[tuple[int, int], ...]:
        return self.fuzzy.metrics.quanta_used


def compare(workload: Sequence[ProcessSpec], fis: FisDefinition, fixed_quantum: int) -> Comparison:
    return Comparison(fixed_quantum, rr_fixed(workload, fixed_quantum), rr_fuzzy(workload, fis))

"""The LRRTQ fuzzy system: (ready-queue length, average burst) -> time quantum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fuzzy import (
    DEFAULT_SAMPLE_POINTS,
    FisDefinition,
    FuzzyError,
    FuzzyRule,
    LinguisticVariable,
    TrapezoidalMF,
    infer,
)

NOP = "LNOP"
ABT = "LABT"
QUANTUM = "LOTmQm"

# (label, p1, p2, p3, p4)
_NOP_TERMS = [
    ("fewer", -2, 0.5, 1.5, 4),
    ("ordinary", 3, 4.8, 5.5, 7.5),
    ("more", 7, 9, 10.5, 12),
]
_ABT_TERMS = [
    ("small", -4, 0.4, 1.5, 4),
    ("average", 3, 5.5, 6.5, 9),
    ("large", 7.5, 10, 11, 13.5),
]
_QUANTUM_TERMS = [
    ("small", 0, 0.7, 1.4, 2.1),
    ("medium", 1.5, 2.2, 2.8, 3.8),
    ("large", 3.5, 4.5, 5, 6),
]

# rows: LNOP term, columns: LABT term -> quantum term
_RULE_MATRIX = {
    ("fewer", "small"): "small",
    ("fewer", "average"): "medium",
    ("fewer", "large"): "large",
    ("ordinary", "small"): "small",
    ("ordinary", "average"): "medium",
    ("ordinary", "large"): "medium",
    ("more", "small"): "small",
    ("more", "average"): "small",
    ("more", "large"): "medium",
}


def _variable(name, lo, hi, terms):
    return LinguisticVariable(
        name, float(lo), float(hi),
        tuple((label, TrapezoidalMF(*map(float, p))) for label, *p in terms),
    )


def build_lrrtq(sample_points: int = DEFAULT_SAMPLE_POINTS) -> FisDefinition:
    rules = tuple(
        FuzzyRule(((NOP, nop), (ABT, abt)), (QUANTUM, out), 1.0)
        for (nop, abt), out in _RULE_MATRIX.items()
    )
    return FisDefinition(
        inputs=(_variable(NOP, 1, 10, _NOP_TERMS), _variable(ABT, 1, 12, _ABT_TERMS)),
        output=_variable(QUANTUM, 1, 5, _QUANTUM_TERMS),
        rules=rules,
        sample_points=sample_points,
    )


@dataclass(frozen=True)
class SurfaceGrid:
    nop_axis: np.ndarray
    abt_axis: np.ndarray
    values: np.ndarray  # values[i, j] is the quantum at (nop_axis[i], abt_axis[j])


def sample_surface(fis: FisDefinition, nop_steps: int, abt_steps: int) -> SurfaceGrid:
    if len(fis.inputs) != 2:
        raise FuzzyError(f"surface needs a two-input system, got {len(fis.inputs)} inputs")
    if nop_steps < 2 or abt_steps < 2:
        raise FuzzyError("surface axes need at least 2 steps each")
    first, second = fis.inputs
    nop_axis = np.linspace(first.lo, first.hi, nop_steps)
    abt_axis = np.linspace(second.lo, second.hi, abt_steps)
    values = np.empty((nop_steps, abt_steps))
    for i, n in enumerate(nop_axis):
        for j, a in enumerate(abt_axis):
            values[i, j] = infer(fis, {first.name: float(n), second.name: float(a)})
    return SurfaceGrid(nop_axis, abt_axis, values)

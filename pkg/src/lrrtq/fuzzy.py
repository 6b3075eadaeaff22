"""Mamdani fuzzy inference over trapezoidal membership functions.

Operators are the usual Mamdani defaults: AND = min, implication = min,
aggregation = max, and a discrete centroid over a uniform grid spanning the
output variable's declared range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

DEFAULT_SAMPLE_POINTS = 1001


class FuzzyError(ValueError):
    """Invalid fuzzy system definition or inference request."""


class MissingInputError(FuzzyError):
    pass


class NoRuleFiredError(FuzzyError):
    """The aggregated output set has zero area; there is nothing to defuzzify."""


@dataclass(frozen=True)
class TrapezoidalMF:
    """Trapezoid with feet at ``p1``/``p4`` and plateau shoulders at ``p2``/``p3``."""

    p1: float
    p2: float
    p3: float
    p4: float

    def __post_init__(self) -> None:
        if not (self.p1 <= self.p2 <= self.p3 <= self.p4):
            raise FuzzyError(
                f"trapezoid breakpoints must be non-decreasing, got "
                f"[{self.p1} {self.p2} {self.p3} {self.p4}]"
            )

    @classmethod
    def from_core_spreads(cls, a: float, b: float, c: float, d: float) -> "TrapezoidalMF":
        """Build from a plateau ``[a, b]`` with left spread ``c`` and right spread ``d``."""
        return cls(a - c, a, b, b + d)

    @property
    def breakpoints(self) -> tuple[float, float, float, float]:
        return (self.p1, self.p2, self.p3, self.p4)

    def __call__(self, x):
        return membership(self, x)


def membership(mf: TrapezoidalMF, x):
    """Degree of ``x`` in ``mf``. Accepts a scalar or a numpy array."""
    if np.ndim(x) == 0:
        return _membership_scalar(mf, float(x))
    return _membership_array(mf, np.asarray(x, dtype=float))


def _membership_scalar(mf: TrapezoidalMF, x: float) -> float:
    p1, p2, p3, p4 = mf.breakpoints
    if p2 <= x <= p3:
        return 1.0
    if x <= p1 or x >= p4:
        return 0.0
    if x < p2:
        return (x - p1) / (p2 - p1)
    return (p4 - x) / (p4 - p3)


def _membership_array(mf: TrapezoidalMF, x: np.ndarray) -> np.ndarray:
    p1, p2, p3, p4 = mf.breakpoints
    out = np.zeros_like(x)
    if p2 > p1:
        rising = (x > p1) & (x < p2)
        out[rising] = (x[rising] - p1) / (p2 - p1)
    if p4 > p3:
        falling = (x > p3) & (x < p4)
        out[falling] = (p4 - x[falling]) / (p4 - p3)
    out[(x >= p2) & (x <= p3)] = 1.0
    return out


@dataclass(frozen=True)
class LinguisticVariable:
    name: str
    lo: float
    hi: float
    terms: tuple[tuple[str, TrapezoidalMF], ...]

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise FuzzyError(f"variable {self.name}: range [{self.lo}, {self.hi}] is empty")
        if not self.terms:
            raise FuzzyError(f"variable {self.name}: needs at least one term")
        labels = [label for label, _ in self.terms]
        if len(set(labels)) != len(labels):
            raise FuzzyError(f"variable {self.name}: duplicate term labels {labels}")
        object.__setattr__(self, "terms", tuple((str(l), mf) for l, mf in self.terms))

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.terms]

    def term(self, label: str) -> TrapezoidalMF:
        for name, mf in self.terms:
            if name == label:
                return mf
        raise FuzzyError(f"variable {self.name} has no term {label!r}")

    def clamp(self, x: float) -> float:
        return min(max(float(x), self.lo), self.hi)


@dataclass(frozen=True)
class FuzzyRule:
    """``antecedents`` are (input variable, term) pairs joined by AND."""

    antecedents: tuple[tuple[str, str], ...]
    consequent: tuple[str, str]
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not self.antecedents:
            raise FuzzyError("rule needs at least one antecedent")
        if not 0.0 < self.weight <= 1.0:
            raise FuzzyError(f"rule weight must be in (0, 1], got {self.weight}")
        object.__setattr__(self, "antecedents", tuple(tuple(a) for a in self.antecedents))
        object.__setattr__(self, "consequent", tuple(self.consequent))

    def __str__(self) -> str:
        lhs = " and ".join(f"({v} is {t})" for v, t in self.antecedents)
        v, t = self.consequent
        return f"If {lhs} then ({v} is {t}) ({self.weight:g})"


@dataclass(frozen=True)
class FisDefinition:
    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable
    rules: tuple[FuzzyRule, ...]
    sample_points: int = DEFAULT_SAMPLE_POINTS

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "rules", tuple(self.rules))
        names = [v.name for v in self.inputs]
        if len(set(names)) != len(names):
            raise FuzzyError(f"duplicate input variable names {names}")
        if self.sample_points < 2:
            raise FuzzyError(f"sample_points must be >= 2, got {self.sample_points}")
        by_name = {v.name: v for v in self.inputs}
        for i, rule in enumerate(self.rules, start=1):
            for var, label in rule.antecedents:
                if var not in by_name:
                    raise FuzzyError(f"rule {i}: unknown input variable {var!r}")
                by_name[var].term(label)
            var, label = rule.consequent
            if var != self.output.name:
                raise FuzzyError(f"rule {i}: consequent variable {var!r} is not the output")
            self.output.term(label)

    def input(self, name: str) -> LinguisticVariable:
        for var in self.inputs:
            if var.name == name:
                return var
        raise FuzzyError(f"no input variable {name!r}")


@dataclass(frozen=True)
class AggregatedOutput:
    grid: np.ndarray
    degrees: np.ndarray = field(repr=False)


def fuzzify(var: LinguisticVariable, x: float) -> list[tuple[str, float]]:
    x = var.clamp(x)
    return [(label, _membership_scalar(mf, x)) for label, mf in var.terms]


def fire_rules(fis: FisDefinition, inputs: Mapping[str, float]) -> list[tuple[str, float]]:
    """Return ``(consequent label, activation)`` for every rule, in rule order."""
    degrees: dict[str, dict[str, float]] = {}
    for var in fis.inputs:
        if var.name not in inputs:
            raise MissingInputError(f"missing value for input variable {var.name!r}")
        degrees[var.name] = dict(fuzzify(var, inputs[var.name]))

    fired = []
    for rule in fis.rules:
        strength = min(degrees[var][label] for var, label in rule.antecedents)
        fired.append((rule.consequent[1], rule.weight * strength))
    return fired


def output_grid(fis: FisDefinition) -> np.ndarray:
    return np.linspace(fis.output.lo, fis.output.hi, fis.sample_points)


def aggregate(fis: FisDefinition, activations: Sequence[tuple[str, float]]) -> AggregatedOutput:
    grid = output_grid(fis)
    degrees = np.zeros_like(grid)
    for label, strength in activations:
        if strength <= 0.0:
            continue
        clipped = np.minimum(strength, membership(fis.output.term(label), grid))
        np.maximum(degrees, clipped, out=degrees)
    return AggregatedOutput(grid, degrees)


def defuzz_centroid(agg: AggregatedOutput) -> float:
    area = float(agg.degrees.sum())
    if area <= 0.0:
        raise NoRuleFiredError("no rule fired: aggregated output has zero area")
    return float(np.dot(agg.grid, agg.degrees) / area)


def infer(fis: FisDefinition, inputs: Mapping[str, float]) -> float:
    return defuzz_centroid(aggregate(fis, fire_rules(fis, inputs)))

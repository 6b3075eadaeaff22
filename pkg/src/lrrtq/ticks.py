"""Exact simulation time: integer ticks of 1e-4 time units."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

TICKS_PER_UNIT = 10_000
DECIMALS = 4

Number = Union[int, float, str, Decimal, Fraction]


def parse_ticks(text: str) -> int:
    """Exact conversion of a decimal literal; more than 4 fractional digits is an error."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise ValueError(f"not a decimal number: {text!r}") from None
    if not value.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    scaled = value * TICKS_PER_UNIT
    if scaled != scaled.to_integral_value():
        raise ValueError(f"{text!r} has more than {DECIMALS} fractional digits")
    return int(scaled)


def to_ticks(value: Number) -> int:
    """Round ``value`` (in time units) to the nearest tick, halves away from zero."""
    if isinstance(value, float):
        value = Decimal(repr(value))
    elif isinstance(value, Fraction):
        value = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        value = Decimal(value)
    return int((value * TICKS_PER_UNIT).to_integral_value(rounding=ROUND_HALF_UP))


def to_units(ticks: int | Fraction) -> Fraction:
    return Fraction(ticks) / TICKS_PER_UNIT


def round_half_up(value: Number, places: int) -> Decimal:
    if isinstance(value, Fraction):
        value = Decimal(value.numerator) / Decimal(value.denominator)
    elif isinstance(value, float):
        value = Decimal(repr(value))
    return Decimal(value).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def fmt(value: Number, places: int = DECIMALS) -> str:
    return str(round_half_up(value, places))


def fmt_ticks(ticks: int | Fraction, places: int = DECIMALS) -> str:
    return fmt(to_units(ticks), places)

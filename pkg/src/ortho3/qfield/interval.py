"""Rational-endpoint interval arithmetic with certified square-root enclosures.

Endpoints are exact :class:`~fractions.Fraction` values, so every interval is
an outer enclosure by construction: no rounding step ever loses containment.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from ..errors import DivisionByZero

_ZERO = Fraction(0)


class Interval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Fraction, hi: Fraction):
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x: Fraction | int) -> Interval:
        x = Fraction(x)
        return cls(x, x)

    def __repr__(self) -> str:
        return f"Interval({self.lo}, {self.hi})"

    def __add__(self, other: Interval) -> Interval:
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: Interval) -> Interval:
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other: Interval) -> Interval:
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    def reciprocal(self) -> Interval:
        if self.lo <= 0 <= self.hi:
            raise DivisionByZero("interval straddles zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: Interval) -> Interval:
        return self * other.reciprocal()

    def contains(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def sign(self) -> int | None:
        """+1 / -1 when the interval is strictly one-signed, 0 for the point
        interval [0, 0], None when the sign is not decided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 == self.hi:
            return 0
        return None

    def to_float(self) -> float:
        return float(self.midpoint)


def sqrt_lower(x: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that is <= sqrt(x), for x >= 0."""
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(isqrt(scaled), 1 << bits)


def sqrt_upper(x: Fraction, bits: int) -> Fraction:
    """A multiple of 2**-bits that is >= sqrt(x), within 2**-bits of it."""
    scaled = -((-x.numerator << (2 * bits)) // x.denominator)  # ceil
    return Fraction(isqrt(scaled) + 1, 1 << bits)


def sqrt_interval(x: Interval, bits: int) -> Interval:
    """Enclosure of sqrt over ``x``.

    A lower endpoint slightly below zero (outward rounding of a nonnegative
    quantity) is clamped; a strictly negative interval is a caller bug.
    """
    if x.hi < 0:
        raise ValueError("square root of a negative interval")
    lo = _ZERO if x.lo <= 0 else sqrt_lower(x.lo, bits)
    return Interval(lo, sqrt_upper(x.hi, bits))

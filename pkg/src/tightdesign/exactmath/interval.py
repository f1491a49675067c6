"""Closed intervals with rational endpoints.

Every operation returns an enclosure of the exact image; endpoints never leave Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _q(self.lo))
        object.__setattr__(self, "hi", _q(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "RatInterval":
        x = _q(x)
        return cls(x, x)

    @classmethod
    def hull(cls, *xs) -> "RatInterval":
        return cls(min(xs), max(xs))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        if isinstance(x, RatInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.contains(x)

    def widen(self, eps) -> "RatInterval":
        return RatInterval(self.lo - eps, self.hi + eps)

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __add__(self, other) -> "RatInterval":
        o = as_interval(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> "RatInterval":
        o = as_interval(other)
        return RatInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other) -> "RatInterval":
        return as_interval(other) - self

    def __mul__(self, other) -> "RatInterval":
        o = as_interval(other)
        if self.lo == self.hi and o.lo == o.hi:
            return RatInterval.point(self.lo * o.lo)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"interval {self} contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "RatInterval":
        return self * as_interval(other).reciprocal()

    def __rtruediv__(self, other) -> "RatInterval":
        return as_interval(other) * self.reciprocal()

    def __pow__(self, n: int) -> "RatInterval":
        if n < 0:
            return (self ** (-n)).reciprocal()
        if n == 0:
            return RatInterval.point(1)
        if n % 2 == 1 or self.lo >= 0:
            return RatInterval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            return RatInterval(self.hi**n, self.lo**n)
        return RatInterval(Fraction(0), max(self.lo**n, self.hi**n))

    def __abs__(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Fraction(0), max(-self.lo, self.hi))

    def mag(self) -> Fraction:
        """Largest absolute value in the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> Fraction:
        """Smallest absolute value in the interval."""
        return abs(self).lo

    def positive(self) -> bool:
        return self.lo > 0

    def negative(self) -> bool:
        return self.hi < 0

    def __str__(self) -> str:
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


def as_interval(x) -> RatInterval:
    return x if isinstance(x, RatInterval) else RatInterval.point(x)


def sqrt_interval(x, prec=Fraction(1, 10**30)) -> RatInterval:
    """Enclosure of sqrt over a nonnegative interval with endpoint error below ``prec``."""
    x = as_interval(x)
    if x.lo < 0:
        raise ValueError("square root of an interval reaching below zero")
    prec = _q(prec)
    scale = prec.denominator // prec.numerator + 1
    lo = _sqrt_floor(x.lo, scale)
    hi = _sqrt_floor(x.hi, scale) + Fraction(1, scale)
    return RatInterval(lo, hi)


def _sqrt_floor(q: Fraction, scale: int) -> Fraction:
    """Largest multiple of 1/scale whose square is at most q."""
    return Fraction(isqrt(q.numerator * scale * scale // q.denominator), scale)


def floor_to(x: Fraction, step: Fraction) -> Fraction:
    return floor(x / step) * step


def ceil_to(x: Fraction, step: Fraction) -> Fraction:
    return -floor(-x / step) * step

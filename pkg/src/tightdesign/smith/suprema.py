"""Certified grid upper bounds for sup over t >= 2 of normalized coefficient magnitudes.

With ``u = 1/t`` the range t >= 2 becomes u in (0, 1/2]. A normalized coefficient
turns into ``u^E (1-u)^-F W(r, u)`` with W a polynomial; fixing ``r`` inside a root
enclosure leaves a univariate problem handled by interval branch-and-bound.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor

import numpy as np

from ..exactmath import RatFun, RatInterval, SymbolicPoly
from ..exactmath.interval import as_interval
from . import fenclose

U_MAX = Fraction(1, 2)
DEFAULT_BUDGET = 10**6
MIN_WIDTH = 2.0**-60
NOISE = 1e-12  # excess over the target that is only rounding; bump the target instead of splitting


class SupremumError(RuntimeError):
    def __init__(self, msg: str, best_upper: Fraction):
        super().__init__(msg)
        self.best_upper = best_upper


def _flo(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, -math.inf) if Fraction(f) > x else f


def _fhi(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, math.inf) if Fraction(f) < x else f


@dataclass(frozen=True)
class UForm:
    """``u**e * (1-u)**(-f) * sum_k w[k] u^k`` with interval coefficients ``w``."""

    w: tuple[RatInterval, ...]
    e: int
    f: int

    def enclose(self, box: RatInterval) -> RatInterval:
        """Exact rational enclosure (slow; used for spot checks)."""
        acc = RatInterval.point(0)
        for c in reversed(self.w):
            acc = acc * box + c
        if self.e:
            acc = acc * box**self.e
        if self.f:
            acc = acc * (1 - box) ** (-self.f)
        return acc

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        # u^e is folded into the polynomial so the centred form sees the whole product
        pad = [0.0] * self.e
        return (
            np.array(pad + [_flo(c.lo) for c in self.w], dtype=np.float64),
            np.array(pad + [_fhi(c.hi) for c in self.w], dtype=np.float64),
        )

    def fenclose(self, a: float, b: float, taylor: bool = True) -> tuple[float, float]:
        """Sound float enclosure on [a, b], 0 <= a <= b < 1."""
        wlo, whi = self._arrays
        return fenclose.enclose(wlo, whi, 0, self.f, a, b, taylor)


def _mag(iv: tuple[float, float]) -> float:
    return max(-iv[0], iv[1])


def _mig(iv: tuple[float, float]) -> float:
    if iv[0] > 0:
        return iv[0]
    if iv[1] < 0:
        return -iv[1]
    return 0.0


def _shift_poly(U: list[Fraction], k: int) -> list[Fraction]:
    return [Fraction(0)] * k + U


def _mul_one_minus_u(U: list[Fraction], n: int) -> list[Fraction]:
    for _ in range(n):
        out = [Fraction(0)] * (len(U) + 1)
        for i, c in enumerate(U):
            out[i] += c
            out[i + 1] -= c
        U = out
    return U


def u_form(f: SymbolicPoly, r) -> UForm:
    """Collapse ``f(r, t)`` into u-form with ``r`` replaced by an interval."""
    r = as_interval(r)
    pieces = []
    for (ir,), rf in f.terms().items():
        U, e, ff = rf.in_u()
        pieces.append((r**ir, U, e, ff))
    if not pieces:
        return UForm((), 0, 0)
    E = min(p[2] for p in pieces)
    F = max(p[3] for p in pieces)
    if E < 0:
        raise SupremumError("normalized coefficient is unbounded as t -> infinity", Fraction(-1))
    total: list[RatInterval] = []
    for rp, U, e, ff in pieces:
        W = _mul_one_minus_u(_shift_poly(U, e - E), F - ff)
        for i, c in enumerate(W):
            term = rp * c
            if i < len(total):
                total[i] = total[i] + term
            else:
                total.append(term)
    return UForm(tuple(total), E, F)


def certified_sup_bound(
    form: UForm, step=Fraction(1), budget: int = DEFAULT_BUDGET, lo=Fraction(0), hi=U_MAX
) -> tuple[Fraction, Fraction, int]:
    """Smallest multiple of ``step`` we can prove bounds ``|F(u)|`` on [lo, hi].

    Returns ``(M, best_lower, boxes)`` where ``best_lower`` is a certified value of
    ``|F|`` attained at a sample point, so the true sup lies in [best_lower, M].
    """
    step = Fraction(step)
    if not form.w:
        return Fraction(0), Fraction(0), 0
    a0, b0 = _flo(Fraction(lo)), _fhi(Fraction(hi))

    def lower_at(u: float) -> Fraction:
        return Fraction(_mig(form.fenclose(u, u)))

    def above(x) -> Fraction:
        # smallest multiple of step that is >= x
        return -floor(-Fraction(x) / step) * step

    n0 = 64
    best = max(lower_at(a0 + (b0 - a0) * i / n0) for i in range(n0 + 1))
    target = above(best)

    heap: list[tuple[float, float, float]] = []

    def push(a: float, b: float) -> None:
        ub = _mag(form.fenclose(a, b))
        if ub > target:
            heapq.heappush(heap, (-ub, a, b))

    push(a0, b0)
    boxes = 1
    while heap:
        neg_ub, a, b = heapq.heappop(heap)
        if -neg_ub <= target:
            continue
        if boxes >= budget:
            raise SupremumError(f"no proof of sup <= {target} within {budget} boxes", Fraction(-neg_ub))
        m = (a + b) / 2
        noise = -neg_ub - float(target) <= NOISE * max(1.0, float(target))
        if noise or b - a < MIN_WIDTH or not a < m < b:
            # the sup sits (numerically) on a grid value: settle for the next one
            target += step
            heapq.heappush(heap, (neg_ub, a, b))
            continue
        val = lower_at(m)
        if val > best:
            best = val
            if best > target:
                target = above(best)
        push(a, m)
        push(m, b)
        boxes += 2
    return target, best, boxes


def sup_normalized(f: SymbolicPoly, r, step=Fraction(1), budget: int = DEFAULT_BUDGET) -> tuple[Fraction, Fraction, int]:
    return certified_sup_bound(u_form(f, r), step, budget)


def planted_form(num_t: list[int], a: int, b: int) -> UForm:
    """u-form of a single RatFun in t (no r dependence), used for sanity checks."""
    U, e, ff = RatFun(num_t, 1, a, b).in_u()
    return UForm(tuple(RatInterval.point(c) for c in U), e, ff)

"""Symbolic construction of the scaled, shifted design polynomial and its beta-expansion.

With ``k``, ``v``, the zero-mean and the shift ``lambda(r)`` written in terms of
``beta`` and ``t``, ``p = s! * Psi_s(abar + beta*r + lambda(r))`` is a polynomial in
``beta`` and ``r`` over Q(t); ``q = beta^s * C(v-s, s)`` is its normalizing denominator.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..exactmath import RatFun, SymbolicPoly, UniPoly
from ..exactmath.symbolic import falling_factorial
from ..hermite import hermite

log = logging.getLogger(__name__)

GENS = ("beta", "r")
MAX_S = 12


def _g(name: str) -> SymbolicPoly:
    return SymbolicPoly.gen(name, GENS)


def _c(q) -> SymbolicPoly:
    return SymbolicPoly.const(q, GENS)


def _rf(num, c=1, a=0, b=0) -> SymbolicPoly:
    return SymbolicPoly.from_ratfun(RatFun(num, c, a, b), GENS)


def block_size(s: int) -> SymbolicPoly:
    """k = t^3 (t-1)^-2 beta^2 + s."""
    return _rf([0, 0, 0, 1], 1, 0, 2) * _g("beta") ** 2 + s


def point_count(s: int) -> SymbolicPoly:
    """v = t^4 (t-1)^-2 beta^2 + t + 2s - 1."""
    return _rf([0, 0, 0, 0, 1], 1, 0, 2) * _g("beta") ** 2 + _rf([2 * s - 1, 1])


def alpha_expr() -> SymbolicPoly:
    """alpha = beta^2 t^2 / (t-1)^2."""
    return _rf([0, 0, 1], 1, 0, 2) * _g("beta") ** 2


def shift_expr(s: int) -> SymbolicPoly:
    """lambda(r) = (1 - 2/t)^2 (r^2 - (s-1)) / 6."""
    return _rf([4, -4, 1], 6, 2, 0) * (_g("r") ** 2 - (s - 1))


def evaluation_point(s: int) -> SymbolicPoly:
    """x = abar + beta*r + lambda(r), the single symbol r standing for xi_i everywhere."""
    abar = alpha_expr() + Fraction(s - 1, 2)
    return (abar + _g("beta") * _g("r") + shift_expr(s)).normalize()


def psi_symbolic(s: int, x: SymbolicPoly, k: SymbolicPoly, v: SymbolicPoly, scale: int = 1) -> SymbolicPoly:
    """``scale * Psi_s(x)`` for symbolic x, k, v (all over the same generators).

    Each binomial becomes a falling factorial; the collected rational factor of the
    i-th summand is ``scale / (i!^2 (s-i)!^2 C(s,i))``.
    """
    gens = x.gens
    one = SymbolicPoly.const(1, gens)
    fall_v = [one]  # (v-s)_i
    fall_x = [one]  # (x)_i
    for i in range(1, s + 1):
        fall_v.append((fall_v[-1] * (v - s - (i - 1))).normalize())
        fall_x.append((fall_x[-1] * (x - (i - 1))).normalize())
    # (k-i)_(s-i) * (k-1-i)_(s-i), built from i = s downwards
    kk = [one] * (s + 1)
    for i in range(s - 1, -1, -1):
        # (k-i)_(s-i) = (k-i) * (k-i-1)_(s-i-1); (k-1-i)_(s-i) = (k-1-i) * (k-2-i)_(s-i-1)
        # so the product gains (k-i)(k-s) ... handled by rebuilding directly
        kk[i] = (falling_factorial(k - i, s - i) * falling_factorial(k - 1 - i, s - i)).normalize()
    total = SymbolicPoly(gens)
    for i in range(s + 1):
        coef = Fraction(scale * (-1) ** (s - i), factorial(i) ** 2 * factorial(s - i) ** 2) / Fraction(
            factorial(s), factorial(i) * factorial(s - i)
        )
        part = (fall_v[i] * kk[i]).normalize()
        part = (part * fall_x[i]).normalize()
        total = total + part * coef
    return total.normalize()


def denominator_q(s: int) -> SymbolicPoly:
    """q = beta^s C(v-s, s)."""
    v = point_count(s)
    return (falling_factorial(v - s, s) * _g("beta") ** s / factorial(s)).normalize()


def lower_bound_q(s: int) -> SymbolicPoly:
    """q~ = beta^{3s} t^{4s} (t-1)^{-2s} / s!."""
    return _rf([0] * (4 * s) + [1], factorial(s), 0, 2 * s) * _g("beta") ** (3 * s)


@dataclass
class GPipeline:
    s: int
    p: SymbolicPoly
    q: SymbolicPoly
    p_tilde: SymbolicPoly
    q_tilde: SymbolicPoly
    kappa: list[SymbolicPoly]  # kappa[j] in the single generator r
    dropped: list[SymbolicPoly]  # coefficients of beta^{3s}, beta^{3s-1} in p, in r
    seconds: float = 0.0
    checks: dict = field(default_factory=dict)

    def normalized_kappa(self, j: int) -> SymbolicPoly:
        """kappa_j * s! * (t-1)^{2s} * t^{-4s}: the quantity whose sup over t >= 2 is M_j."""
        kj = self.kappa[j]
        return (kj * SymbolicPoly.from_ratfun(RatFun([0] * 0 + [factorial(self.s)], 1, 4 * self.s, -2 * self.s), kj.gens)).normalize()


def _as_r_poly(p: SymbolicPoly) -> SymbolicPoly:
    return p if p.gens == ("r",) else p.with_gens(("r",))


def build_pipeline(s: int) -> GPipeline:
    """Steps 1-5 of the constant-extraction procedure, exact throughout."""
    if not 2 <= s <= MAX_S:
        raise ValueError(f"s must lie in [2, {MAX_S}]")
    t0 = time.perf_counter()
    x = evaluation_point(s)
    p = psi_symbolic(s, x, block_size(s), point_count(s), scale=factorial(s))
    q = denominator_q(s)
    deg = p.degree("beta")
    if deg != 3 * s:
        raise AssertionError(f"numerator has beta-degree {deg}, expected {3 * s}")
    dropped = [p.coefficient("beta", 3 * s), p.coefficient("beta", 3 * s - 1)]
    p_tilde = p
    for j in (3 * s, 3 * s - 1):
        cj = p.coefficient("beta", j).with_gens(GENS) * _g("beta") ** j
        p_tilde = p_tilde - cj
    p_tilde = p_tilde.normalize()
    b2p = (p_tilde * _g("beta") ** 2).normalize()
    kappa = [b2p.coefficient("beta", 3 * s - j) for j in range(3 * s - 1)]
    pipe = GPipeline(s, p, q, p_tilde, lower_bound_q(s), kappa, dropped)
    pipe.seconds = time.perf_counter() - t0
    log.info("pipeline s=%d built in %.1fs (%d numerator terms)", s, pipe.seconds, len(p.num))
    return pipe


def r_poly_divides(h: UniPoly, f: SymbolicPoly) -> bool:
    """Whether the Hermite polynomial ``h(r)`` divides ``f(r)`` over Q(t).

    ``h`` is monic with rational coefficients, so long division stays inside the
    restricted coefficient representation.
    """
    terms = f.terms()
    if not terms:
        return True
    deg = max(e[0] for e in terms)
    coeffs = [terms.get((i,), RatFun()) for i in range(deg + 1)]
    hd = h.degree
    for top in range(deg, hd - 1, -1):
        c = coeffs[top]
        if c.is_zero():
            continue
        for j, hj in enumerate(h.coeffs):
            if hj:
                coeffs[top - hd + j] = coeffs[top - hd + j] - c * RatFun.const(hj)
    return all(c.is_zero() for c in coeffs[:hd])


def check_top_divisibility(pipe: GPipeline) -> list[bool]:
    h = hermite(pipe.s)
    return [r_poly_divides(h, d) for d in pipe.dropped]

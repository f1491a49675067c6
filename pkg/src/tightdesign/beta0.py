"""Explicit thresholds beta_0(s) above which no tight 2s-design exists, and beta_*(4).

Every quantity is carried as a rational interval. The Smith step only ever needs a
lower bound for D_i = |H_{s-1}(xi_i)| (a smaller D gives a larger, still valid
beta-hat), so D values enter as points: the published rounded-down figures in
``paper`` mode, our certified lower bounds in ``certified`` mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import RatFun, RatInterval, SymbolicPoly, ceil_to, sqrt_interval
from .hermite import HermiteTable, build_table, verify_xi_estimates
from .reference import CONSTANT_ROWS, ZERO_ROWS

GRANULARITY = Fraction(1, 100)


class ThresholdError(ArithmeticError):
    """A precondition of a threshold formula failed (the formula would be invalid)."""


@dataclass(frozen=True)
class ThresholdInputs:
    s: int
    mode: str
    B: Fraction
    C: dict[int, Fraction]
    D: dict[int, Fraction]

    @classmethod
    def paper(cls, s: int) -> "ThresholdInputs":
        B, Cs = CONSTANT_ROWS[s]
        first = 0 if s % 2 else 1
        C = {first + n: Fraction(c) for n, c in enumerate(Cs)}
        D = {i: Fraction(ZERO_ROWS[(s, i)][1]) for i in C}
        return cls(s, "paper", Fraction(B), C, D)

    @classmethod
    def certified(cls, s: int, consts: dict, table: HermiteTable | None = None) -> "ThresholdInputs":
        """From self-derived constants (``SmithConstants`` per i >= 0)."""
        tb = table or build_table(s)
        Bs = {c.B for c in consts.values()}
        B = max(Bs)
        C = {i: c.C for i, c in consts.items()}
        D = {i: tb.d_bounds[i] for i in consts}
        return cls(s, "certified", B, C, D)

    def beta_hat(self, i: int, eps: RatInterval) -> RatInterval:
        if eps.lo <= 0:
            raise ThresholdError(f"epsilon_{i} is not certifiably positive")
        second = RatInterval.point(self.C[i]) / (eps * self.D[i])
        return RatInterval(max(self.B, second.lo), max(self.B, second.hi))

    def ratio(self, i: int, j: int) -> Fraction:
        """C_i D_j / (C_j D_i)."""
        return self.C[i] * self.D[j] / (self.C[j] * self.D[i])


@dataclass
class Beta0Report:
    s: int
    variant: str
    mode: str
    epsilons: dict[int, RatInterval]
    a_coeffs: dict[int, RatInterval]
    beta1: RatInterval | None
    beta2: RatInterval | None
    beta0: Fraction
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        def iv(x: RatInterval | None):
            return None if x is None else [float(x.lo), float(x.hi)]

        return {
            "s": self.s,
            "variant": self.variant,
            "mode": self.mode,
            "epsilons": {str(i): iv(e) for i, e in self.epsilons.items()},
            "a_coeffs": {str(i): iv(a) for i, a in self.a_coeffs.items()},
            "beta1": iv(self.beta1),
            "beta2": iv(self.beta2),
            "beta0": str(self.beta0),
            "beta0_float": float(self.beta0),
            **self.extras,
        }


def _round_up(x: RatInterval) -> Fraction:
    return ceil_to(x.hi, GRANULARITY)


def _xi_sq(tb: HermiteTable, i: int) -> RatInterval:
    return RatInterval.point(0) if i == 0 else tb.xi_sq(i)


def a_coeff(tb: HermiteTable, i: int) -> RatInterval:
    """a_i = (xi_i^2 - xi_{i-1}^2) / (xi_{i-1}^2 - xi_{i-2}^2)."""
    return (_xi_sq(tb, i) - _xi_sq(tb, i - 1)) / (_xi_sq(tb, i - 1) - _xi_sq(tb, i - 2))


def _chain_eps(inp: ThresholdInputs, a: RatInterval, i: int) -> RatInterval:
    inner = 1 + (1 + a) * inp.ratio(i - 1, i) + a * inp.ratio(i - 2, i)
    return RatInterval.point(Fraction(1, 2)) / inner


def _chain(inp: ThresholdInputs, tb: HermiteTable, first: int):
    eps, a_map, hats = {}, {}, []
    for i in range(first, inp.s // 2 + 1):
        a = a_coeff(tb, i)
        a_map[i] = a
        eps[i] = _chain_eps(inp, a, i)
        hats.append(inp.beta_hat(i, eps[i]))
    beta2 = None
    if hats:
        beta2 = RatInterval(max(h.lo for h in hats), max(h.hi for h in hats))
    return eps, a_map, beta2


def _max(a: RatInterval, b: RatInterval | None) -> RatInterval:
    if b is None:
        return a
    return RatInterval(max(a.lo, b.lo), max(a.hi, b.hi))


def beta0_odd(s: int, inp: ThresholdInputs, table: HermiteTable | None = None) -> Beta0Report:
    if s % 2 == 0 or s < 5:
        raise ValueError("odd s >= 5 required")
    tb = table or build_table(s)
    x1 = tb.xi_sq(1)
    if not x1.hi < 3:
        raise ThresholdError("xi_1^2 < 3 fails")
    eps0 = (1 - x1 / 3) * Fraction(1, 2) / (1 + inp.ratio(1, 0))
    beta1 = inp.beta_hat(0, eps0)
    eps, a_map, beta2 = _chain(inp, tb, 2)
    eps = {0: eps0, **eps}
    return Beta0Report(s, "odd", inp.mode, eps, a_map, beta1, beta2, _round_up(_max(beta1, beta2)))


def beta0_even(s: int, inp: ThresholdInputs, table: HermiteTable | None = None) -> Beta0Report:
    if s % 2 or s < 8:
        raise ValueError("even s >= 8 required")
    tb = table or build_table(s)
    d21 = tb.xi_sq(2) - tb.xi_sq(1)
    if not d21.hi < 3:
        raise ThresholdError("xi_2^2 - xi_1^2 < 3 fails")
    eps1 = (1 - d21 / 3) * Fraction(1, 2) / (1 + inp.ratio(2, 1))
    beta1 = inp.beta_hat(1, eps1)
    eps, a_map, beta2 = _chain(inp, tb, 3)
    eps = {1: eps1, **eps}
    return Beta0Report(s, "even", inp.mode, eps, a_map, beta1, beta2, _round_up(_max(beta1, beta2)))


def _agrees(x: RatInterval, text: str) -> bool:
    """Whether the printed decimal ``text`` is a correct rounding of every point of ``x``."""
    digits = len(text.split(".")[1]) if "." in text else 0
    half = Fraction(1, 2 * 10**digits)
    v = Fraction(text)
    return v - half <= x.lo and x.hi <= v + half


def beta0_six(inp: ThresholdInputs, table: HermiteTable | None = None) -> Beta0Report:
    tb = table or build_table(6)
    verify_xi_estimates(6, tb)
    d21 = tb.xi_sq(2) - tb.xi_sq(1)
    a = (tb.xi_sq(3) - tb.xi_sq(1)) / d21
    if not a.lo > 3:
        raise ThresholdError("a > 3 fails")
    r21, r31 = inp.ratio(2, 1), inp.ratio(3, 1)
    eps1 = (a - 3) * Fraction(1, 2) / (1 + a + a * r21 + r31)
    eps2 = eps1 * 2 * (1 + r21)
    eps3 = eps1 * 2 * (1 + r31)
    beta0 = inp.beta_hat(1, eps1)
    bound2 = (a - 3) / a
    bound3 = a - 3
    combo = eps2 * a + eps3 - (a - 3)
    extras = {
        "a": [float(a.lo), float(a.hi)],
        "eps2_lt_(a-3)/a": eps2.hi < bound2.lo,
        "eps3_lt_a-3": eps3.hi < bound3.lo,
        "eps2_a_plus_eps3_eq_a-3": combo.lo <= 0 <= combo.hi,
        "(a-3)/a_rounds_to_0.10350": _agrees(bound2, "0.10350"),
        "a-3_rounds_to_0.34635": _agrees(bound3, "0.34635") or _agrees(bound3, "0.34634"),
    }
    return Beta0Report(6, "six", inp.mode, {1: eps1, 2: eps2, 3: eps3}, {3: a}, beta0, None, _round_up(beta0), extras)


def _iv_sqrt(x: RatInterval) -> RatInterval:
    return RatInterval(sqrt_interval(x.lo).lo, sqrt_interval(x.hi).hi)


def t_star_enclosure() -> RatInterval:
    """t = 2 / (1 - (3/8)^(1/4)), where the s=4 shift gap 2(lambda_2 - lambda_1) equals 1."""
    q = _iv_sqrt(sqrt_interval(Fraction(3, 8)))
    return 2 / (1 - q)


def beta_star_four(inp: ThresholdInputs, table: HermiteTable | None = None) -> Beta0Report:
    tb = table or build_table(4)
    verify_xi_estimates(4, tb)
    gap = (tb.xi_sq(2) - tb.xi_sq(1)) / 3
    root = sqrt_interval(Fraction(8, 3))
    gap = RatInterval(max(gap.lo, root.lo), min(gap.hi, root.hi))  # both enclose sqrt(8/3)
    eps1 = (2 - gap) * Fraction(1, 2) / (1 + inp.ratio(2, 1))
    beta = inp.beta_hat(1, eps1)
    t = t_star_enclosure()
    two_minus = 2 - gap
    extras = {
        "t_star": [float(t.lo), float(t.hi)],
        "t_star_rounds_to_9.1971905725": _agrees(t, "9.1971905725"),
        "sqrt_8_3": [float(gap.lo), float(gap.hi)],
        "sqrt_8_3_rounds_to_1.63299": _agrees(gap, "1.63299"),
        "2_minus_sqrt_8_3_starts_0.36700": Fraction("0.367") <= two_minus.lo and two_minus.hi < Fraction("0.36701"),
    }
    return Beta0Report(4, "four-star", inp.mode, {1: eps1}, {}, beta, None, _round_up(beta), extras)


def compute_beta0(s: int, inp: ThresholdInputs, table: HermiteTable | None = None) -> Beta0Report:
    if s == 4:
        return beta_star_four(inp, table)
    if s == 6:
        return beta0_six(inp, table)
    if s % 2:
        return beta0_odd(s, inp, table)
    if s >= 8:
        return beta0_even(s, inp, table)
    raise ValueError(f"no threshold formula for s={s}")


def lambda_telescoping_identity(s: int, i: int) -> bool:
    """(lambda_i - lambda_{i-1})(y_{i-1} - y_{i-2}) == (lambda_{i-1} - lambda_{i-2})(y_i - y_{i-1}).

    ``y_j`` stands for xi_j^2 as an independent symbol (0 for j = 0 when s is odd), so the
    check is an exact identity in t and in the squared zeros, with a_i cleared.
    """
    if not 2 <= i <= s // 2:
        raise ValueError("need 2 <= i <= floor(s/2)")
    gens = ("y2", "y1", "y0")
    shift = SymbolicPoly.from_ratfun(RatFun([4, -4, 1], 6, 2, 0), gens)  # (1-2/t)^2 / 6

    def y(offset: int) -> SymbolicPoly:
        j = i - offset
        if j == 0:
            return SymbolicPoly.const(0, gens)
        return SymbolicPoly.gen(gens[offset], gens)

    def lam(offset: int) -> SymbolicPoly:
        return shift * (y(offset) - (s - 1))

    lhs = (lam(0) - lam(1)) * (y(1) - y(2))
    rhs = (lam(1) - lam(2)) * (y(0) - y(1))
    return (lhs - rhs).normalize().is_zero()

"""Coefficient suprema, the (B, C) constants, and the zero-approximation radius."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, factorial

from ..exactmath import RatInterval, UniPoly, ceil_to, interval_eval
from ..hermite import HermiteTable, build_table
from ..reference import CONSTANT_ROWS
from .pipeline import GPipeline, build_pipeline, check_top_divisibility
from .suprema import DEFAULT_BUDGET, certified_sup_bound, u_form

log = logging.getLogger(__name__)

C_GRANULARITY = Fraction(1, 100)
DEFAULT_STEP = Fraction(1, 1000)
XI_WIDTH = Fraction(1, 10**40)


@dataclass(frozen=True)
class SupBound:
    j: int
    M: Fraction  # certified upper bound
    lower: Fraction  # certified attained value
    boxes: int

    @property
    def ceiling(self) -> int:
        return ceil(self.M)


@dataclass
class SmithConstants:
    s: int
    i: int
    M: list[Fraction]
    B: Fraction
    C: Fraction
    D_lower: Fraction
    lower: list[Fraction] = field(default_factory=list)

    @property
    def M_int(self) -> list[int]:
        return [ceil(m) for m in self.M]

    def weighted_sum(self, B=None, integer: bool = False) -> Fraction:
        B = Fraction(self.B if B is None else B)
        ms = self.M_int if integer else self.M
        return sum((Fraction(m) / B**j for j, m in enumerate(ms)), Fraction(0))

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "i": self.i,
            "B": str(self.B),
            "C": str(self.C),
            "D_lower": str(self.D_lower),
            "M": [str(m) for m in self.M],
            "M_ceiling": self.M_int,
        }


def step_for(j: int, B, step0=DEFAULT_STEP) -> Fraction:
    """Granularity for M_j: the slack in M_j / B^j stays below ``step0``, capped at 1."""
    if B is None:
        return Fraction(1)
    return min(Fraction(1), Fraction(step0) * Fraction(B) ** j)


def coeff_suprema(
    pipe: GPipeline,
    i: int,
    table: HermiteTable | None = None,
    B=None,
    step0=DEFAULT_STEP,
    budget: int = DEFAULT_BUDGET,
) -> list[SupBound]:
    """Certified bounds on sup_{t>=2} |kappa_j(xi_i, t)| s! (t-1)^{2s} t^{-4s}, for every j.

    With ``B`` given, M_j is resolved to granularity ``step_for(j, B, step0)``;
    otherwise to integers.
    """
    tb = table or build_table(pipe.s)
    r = tb.zeros[i].refine(XI_WIDTH).enclosure
    out = []
    for j in range(len(pipe.kappa)):
        form = u_form(pipe.normalized_kappa(j), r)
        M, lower, boxes = certified_sup_bound(form, step_for(j, B, step0), budget)
        out.append(SupBound(j, M, lower, boxes))
        log.debug("s=%d i=%d j=%d M=%s boxes=%d", pipe.s, i, j, M, boxes)
    return out


def derive_constants(s: int, i: int, M: list, B_choice, D_lower) -> SmithConstants:
    """Smallest C on the 1/100 grid with sum_j M_j B^-j <= C."""
    B = Fraction(B_choice)
    if B <= 0:
        raise ValueError("B must be positive")
    Ms = [Fraction(m.M if isinstance(m, SupBound) else m) for m in M]
    lower = [m.lower for m in M if isinstance(m, SupBound)]
    total = sum((m / B**j for j, m in enumerate(Ms)), Fraction(0))
    return SmithConstants(s, i, Ms, B, ceil_to(total, C_GRANULARITY), Fraction(D_lower), lower)


def beta_hat(s: int, i: int, eps, consts: SmithConstants, D=None) -> Fraction | RatInterval:
    """max{B_i, C_i / (eps D_i)}; ``eps`` may be an interval, then so is the result."""
    D = consts.D_lower if D is None else D
    if D <= 0:
        raise ValueError("D_i lower bound must be positive")
    if isinstance(eps, RatInterval):
        if eps.lo <= 0:
            raise ValueError("eps must be positive")
        second = RatInterval.point(consts.C) / (eps * D)
        return RatInterval(max(consts.B, second.lo), max(consts.B, second.hi))
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    return max(consts.B, consts.C / (eps * D))


@dataclass
class ConstantsRow:
    i: int
    B: Fraction
    C_paper: Fraction
    certified_sum: Fraction
    integer_sum: Fraction
    derived: SmithConstants

    @property
    def ok(self) -> bool:
        return self.certified_sum <= self.C_paper

    @property
    def ok_integer(self) -> bool:
        return self.integer_sum <= self.C_paper

    def as_dict(self) -> dict:
        return {
            "i": self.i,
            "B": str(self.B),
            "C_paper": str(self.C_paper),
            "sum_certified": str(self.certified_sum),
            "sum_certified_float": float(self.certified_sum),
            "sum_integer_ceilings": float(self.integer_sum),
            "C_derived": str(self.derived.C),
            "ok": self.ok,
            "ok_integer_ceilings": self.ok_integer,
            "M": [str(m) for m in self.derived.M],
            "M_ceiling": self.derived.M_int,
        }


@dataclass
class ConstantsVerdict:
    s: int
    rows: list[ConstantsRow]
    top_divisible: list[bool]
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.top_divisible) and all(r.ok for r in self.rows)

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "passed": self.passed,
            "top_coefficients_divisible_by_H_s": self.top_divisible,
            "rows": [r.as_dict() for r in self.rows],
            "seconds": round(self.seconds, 3),
        }


def all_constants(
    s: int,
    B=None,
    pipe: GPipeline | None = None,
    table: HermiteTable | None = None,
    step0=DEFAULT_STEP,
    budget: int = DEFAULT_BUDGET,
) -> dict[int, SmithConstants]:
    """Self-derived constants for every i >= 0, using the published B unless overridden."""
    pipe = pipe or build_pipeline(s)
    tb = table or build_table(s)
    if B is None:
        B = CONSTANT_ROWS[s][0] if s in CONSTANT_ROWS else 100
    out = {}
    for i in tb.positive_indices():
        sups = coeff_suprema(pipe, i, tb, B, step0, budget)
        out[i] = derive_constants(s, i, sups, B, tb.d_bounds[i])
    return out


def validate_paper_constants(
    s: int,
    pipe: GPipeline | None = None,
    table: HermiteTable | None = None,
    consts: dict[int, SmithConstants] | None = None,
    step0=DEFAULT_STEP,
) -> ConstantsVerdict:
    """Check the published (B, C_i) rows against certified M_j bounds."""
    t0 = time.perf_counter()
    B, Cs = CONSTANT_ROWS[s]
    pipe = pipe or build_pipeline(s)
    tb = table or build_table(s)
    consts = consts or all_constants(s, B, pipe, tb, step0)
    rows = []
    for n, i in enumerate(tb.positive_indices()):
        c = consts[i]
        rows.append(ConstantsRow(i, Fraction(B), Fraction(Cs[n]), c.weighted_sum(B), c.weighted_sum(B, integer=True), c))
    return ConstantsVerdict(s, rows, check_top_divisibility(pipe), time.perf_counter() - t0)


def lower_bound_holds(pipe: GPipeline, betas=None, ts=None) -> bool:
    """q~ <= q on a grid of (beta, t) with beta > 0, t >= 2 (exact evaluation)."""
    betas = betas or [Fraction(1, 2), Fraction(1), Fraction(3), Fraction(10), Fraction(100)]
    ts = ts or [Fraction(2), Fraction(5, 2), Fraction(3), Fraction(10), Fraction(1000)]
    for b in betas:
        for t in ts:
            vals = {"beta": b, "r": Fraction(0)}
            if not pipe.q_tilde.evaluate(vals, t) <= pipe.q.evaluate(vals, t):
                return False
    return True


def falling_q(s: int, beta, t) -> Fraction:
    """beta^s C(t^4 (t-1)^-2 beta^2 + t + s - 1, s) by the falling-factorial product."""
    X = Fraction(t) ** 4 / (Fraction(t) - 1) ** 2 * Fraction(beta) ** 2 + t + s - 1
    prod = Fraction(1)
    for j in range(s):
        prod *= X - j
    return Fraction(beta) ** s * prod / factorial(s)


# --- the Smith radius and the zero frames -------------------------------------------


def smith_radii(P: UniPoly, points, Q: UniPoly | None = None) -> list[RatInterval]:
    """Radii n |P(xi)| / |Q'(xi)| around approximations ``points`` of the zeros of monic ``P``."""
    pts = list(points)
    n = P.degree
    if len(pts) != n:
        raise ValueError("need one approximation per zero")
    if P.coeffs[-1] != 1:
        raise ValueError("P must be monic")
    if Q is None:
        Q = UniPoly((1,))
        for x in pts:
            if isinstance(x, RatInterval):
                raise ValueError("pass Q explicitly for interval points")
            Q = Q * UniPoly((-Fraction(x), 1))
    dQ = Q.derivative()
    out = []
    for x in pts:
        den = abs(interval_eval(dQ, x))
        if den.lo <= 0:
            raise ValueError("approximation points must be distinct")
        out.append(abs(interval_eval(P, x)) * n / den)
    return out


@dataclass(frozen=True)
class ShiftContext:
    s: int
    i: int
    t: Fraction | RatInterval
    xi: RatInterval

    @property
    def lambda_i(self) -> RatInterval:
        t = self.t if isinstance(self.t, RatInterval) else RatInterval.point(self.t)
        return (1 - 2 / t) ** 2 * (self.xi**2 - (self.s - 1)) / 6

    def z_frame(self, x, abar, beta: RatInterval) -> RatInterval:
        return (x - abar - self.lambda_i) / beta

    def y_frame(self, x, abar, beta: RatInterval) -> RatInterval:
        return x - abar - beta * self.xi


def lambda_i(s: int, t, xi_sq) -> Fraction | RatInterval:
    return (1 - Fraction(2) / t) ** 2 * (xi_sq - (s - 1)) / 6


@dataclass
class FrameCheck:
    i: int
    beta_hat: Fraction
    active: bool
    deviation: RatInterval  # |y_i - lambda_i|
    smith_bound: RatInterval  # |G(xi_i)| / D_i times beta
    identity_ok: bool
    ok: bool

    def as_dict(self) -> dict:
        return {
            "i": self.i,
            "beta_hat": float(self.beta_hat),
            "active": self.active,
            "deviation_hi": float(self.deviation.hi),
            "smith_bound_hi": float(self.smith_bound.hi),
            "identity_ok": self.identity_ok,
            "ok": self.ok,
        }


def validate_zero_frames(s: int, v: int, k: int, consts: dict[int, SmithConstants], eps, table=None) -> list[FrameCheck]:
    """End-to-end check of |y_i - lambda_i| < eps on concrete parameters beyond beta-hat."""
    from ..design import derive_params, psi
    from ..exactmath import isolate_real_roots

    eps = Fraction(eps)
    cand = derive_params(s, v, k)
    if cand.t < 2:
        raise ValueError("parameters must have t >= 2")
    tb = table or build_table(s)
    roots = isolate_real_roots(psi(s, v, k), Fraction(1, 10**30))
    if len(roots) != s:
        raise ValueError("Psi_s must have s real zeros")
    beta = cand.beta
    abar = cand.alpha_bar
    idx = sorted(tb.zeros)
    x_of = {i: r.enclosure for i, r in zip(idx, roots)}
    G_scale = Fraction(factorial(s), comb(v - s, s))
    out = []
    for i in idx:
        c = consts[abs(i)]
        bh = beta_hat(s, abs(i), eps, c)
        ctx = ShiftContext(s, i, cand.t, tb.xi(i))
        y = ctx.y_frame(x_of[i], abar, beta)
        z = ctx.z_frame(x_of[i], abar, beta)
        lam = ctx.lambda_i
        dev = abs(y - lam)
        other = beta * abs(z - tb.xi(i))
        identity_ok = not (dev.hi < other.lo or other.hi < dev.lo)
        arg = abar + beta * tb.xi(i) + lam
        G = interval_eval(psi(s, v, k), arg) * G_scale / beta**s
        smith = beta * abs(G) / tb.d(i)
        active = beta.lo > bh
        ok = identity_ok and (dev.hi < eps if active else True) and not dev.lo > smith.hi
        out.append(FrameCheck(i, bh, active, dev, smith, identity_ok, ok))
    return out

"""Tight 2s-design parameters, the intersection-number polynomial, and feasibility checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .exactmath import RatInterval, UniPoly, isolate_real_roots, sqrt_interval, square_free_part


class DesignError(ValueError):
    """Malformed (s, v, k) parameters."""


def _validate(s: int, v: int, k: int) -> None:
    if s < 1:
        raise DesignError("s must be positive")
    if v < k + s:
        raise DesignError(f"need v >= k + s, got s={s} v={v} k={k}")


def falling(x: UniPoly, m: int) -> UniPoly:
    out = UniPoly((1,))
    for j in range(m):
        out = out * (x - j)
    return out


def psi(s: int, v: int, k: int) -> UniPoly:
    """Degree-s polynomial whose zeros are the intersection numbers of a tight 2s-(v,k,lambda) design."""
    _validate(s, v, k)
    if k < 2 * s:
        raise DesignError(f"need k >= 2s, got k={k} s={s}")
    x = UniPoly.x()
    total = UniPoly()
    for i in range(s + 1):
        c = Fraction((-1) ** (s - i) * comb(v - s, i) * comb(k - i, s - i) * comb(k - 1 - i, s - i), comb(s, i))
        total = total + falling(x, i) * (c / factorial(i))
    if total.degree != s:
        raise AssertionError(f"Psi_{s} has degree {total.degree}")
    return total


@dataclass(frozen=True)
class DesignCandidate:
    s: int
    v: int
    k: int
    alpha: Fraction
    t: Fraction
    beta_sq: Fraction
    alpha_bar: Fraction
    lam: Fraction
    b: int

    @property
    def beta(self) -> RatInterval:
        return sqrt_interval(self.beta_sq)

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "v": self.v,
            "k": self.k,
            "alpha": str(self.alpha),
            "t": str(self.t),
            "beta_sq": str(self.beta_sq),
            "beta": float(self.beta.mid),
            "alpha_bar": str(self.alpha_bar),
            "lambda": str(self.lam),
            "b": self.b,
        }


def derive_params(s: int, v: int, k: int) -> DesignCandidate:
    _validate(s, v, k)
    if v == 2 * s - 1:
        raise DesignError("v = 2s - 1 makes alpha undefined")
    alpha = Fraction((k - s + 1) * (k - s), v - 2 * s + 1)
    t = Fraction(v - 2 * s + 1, k - s + 1)
    beta_sq = (1 - 1 / t) ** 2 * alpha
    lam = Fraction(comb(v, s) * comb(k, 2 * s), comb(v, 2 * s)) if v >= 2 * s else Fraction(0)
    return DesignCandidate(s, v, k, alpha, t, beta_sq, alpha + Fraction(s - 1, 2), lam, comb(v, s))


def k_from(s: int, t: Fraction, beta_sq: Fraction) -> Fraction:
    return t**3 / (t - 1) ** 2 * beta_sq + s


def v_from(s: int, t: Fraction, beta_sq: Fraction) -> Fraction:
    return t**4 / (t - 1) ** 2 * beta_sq + t + 2 * s - 1


def complement(s: int, v: int, k: int) -> tuple[int, int]:
    return v, v - k


def residue_r(k: int, s: int) -> int:
    """Least residue of s(k-s+1)(k-s) modulo 2(k-s)+1, by the closed four-case formula."""
    if not (s >= 1 and k >= 2 * s):
        raise DesignError("need k >= 2s >= 2")
    n = k - s
    m4 = s % 4
    if m4 == 0:
        val = Fraction(2 * n) - Fraction(s - 4, 4)
    elif m4 == 2:
        val = Fraction(n) - Fraction(s - 2, 4)
    elif (m4 == 1 and k % 2 == 1) or (m4 == 3 and k % 2 == 0):
        val = Fraction(n, 2) - Fraction(s - 1, 4)
    else:
        val = Fraction(3 * n, 2) - Fraction(s - 3, 4)
    if val.denominator != 1:
        raise AssertionError(f"residue formula not integral for k={k} s={s}")
    return int(val)


FAILURE_TAGS = (
    "v-equals-2k",
    "v-equals-2k-plus-1",
    "s-alpha-bar-not-integer",
    "lambda-not-integer",
    "coefficient-test-failed",
    "psi-roots-not-distinct-nonnegative-integers",
)


@dataclass
class FeasibilityVerdict:
    s: int
    v: int
    k: int
    failures: list[str] = field(default_factory=list)
    intersection_numbers: list[int] | None = None
    lam: Fraction | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "v": self.v,
            "k": self.k,
            "passed": self.passed,
            "failures": list(self.failures),
            "lambda": None if self.lam is None else str(self.lam),
            "intersection_numbers": self.intersection_numbers,
        }


def integer_roots(p: UniPoly) -> list[int]:
    """All integer zeros of ``p`` (exact), via isolation to width < 1 and floor/ceil tests."""
    sf = square_free_part(p)
    out = set()
    for root in isolate_real_roots(sf, Fraction(1, 2)):
        lo, hi = root.enclosure.lo, root.enclosure.hi
        for n in {int(lo.__floor__()), int(hi.__ceil__())}:
            if p(Fraction(n)) == 0:
                out.add(n)
    return sorted(out)


def check_candidate(s: int, v: int, k: int, stop_early: bool = False) -> FeasibilityVerdict:
    """Run the necessary conditions in order and collect every failure."""
    _validate(s, v, k)
    verdict = FeasibilityVerdict(s, v, k)
    fails = verdict.failures

    def done() -> bool:
        return stop_early and bool(fails)

    if v == 2 * k:
        fails.append("v-equals-2k")
    if v == 2 * k + 1:
        fails.append("v-equals-2k-plus-1")
    if done():
        return verdict
    cand = derive_params(s, v, k)
    verdict.lam = cand.lam
    if (s * cand.alpha_bar).denominator != 1:
        fails.append("s-alpha-bar-not-integer")
    if cand.lam.denominator != 1:
        fails.append("lambda-not-integer")
    if done() or k < 2 * s:
        if k < 2 * s:
            fails.append("psi-roots-not-distinct-nonnegative-integers")
        return verdict
    poly = psi(s, v, k).monic()
    if any(c.denominator != 1 for c in poly.coeffs):
        fails.append("coefficient-test-failed")
        if done():
            return verdict
    roots = integer_roots(poly)
    if len(roots) == s and all(0 <= r < k for r in roots):
        if not fails:
            verdict.intersection_numbers = roots
    else:
        fails.append("psi-roots-not-distinct-nonnegative-integers")
    return verdict


def psi_root_sum(s: int, v: int, k: int) -> Fraction:
    """Sum of the zeros of Psi_s from its two top coefficients."""
    p = psi(s, v, k)
    return -p.coeffs[s - 1] / p.coeffs[s]

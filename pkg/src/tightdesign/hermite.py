"""Normalized Hermite polynomials, certified zeros and the |H_{s-1}| bounds at those zeros."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactmath import CertifiedRoot, RatInterval, UniPoly, floor_to, interval_eval, isolate_real_roots

DEFAULT_WIDTH = Fraction(1, 10**15)


@lru_cache(maxsize=None)
def hermite(s: int) -> UniPoly:
    """H_0 = 1, H_1 = x, H_s = x H_{s-1} - (s-1) H_{s-2}."""
    if s < 0:
        raise ValueError("degree must be nonnegative")
    prev, cur = UniPoly((1,)), UniPoly((0, 1))
    if s == 0:
        return prev
    for n in range(2, s + 1):
        prev, cur = cur, UniPoly.x() * cur - (n - 1) * prev
    return cur


def zero_indices(s: int) -> list[int]:
    """-floor(s/2), ..., floor(s/2), with 0 only for odd s."""
    h = s // 2
    return [i for i in range(-h, h + 1) if i != 0 or s % 2]


@dataclass
class HermiteTable:
    s: int
    poly: UniPoly
    zeros: dict[int, CertifiedRoot]
    d_enclosures: dict[int, RatInterval]
    d_bounds: dict[int, Fraction] = field(default_factory=dict)

    def xi(self, i: int) -> RatInterval:
        return self.zeros[i].enclosure

    def xi_sq(self, i: int) -> RatInterval:
        return self.xi(i) ** 2

    def d(self, i: int) -> RatInterval:
        return self.d_enclosures[i]

    def positive_indices(self) -> list[int]:
        return [i for i in sorted(self.zeros) if i >= 0]


def build_table(s: int, width=DEFAULT_WIDTH) -> HermiteTable:
    """Certified zeros of H_s and enclosures of D_i = |H_{s-1}(xi_i)|.

    Zeros are isolated for x >= 0 only and mirrored, so xi_{-i} = -xi_i holds
    exactly at the level of enclosures. ``d_bounds`` holds the certified lower end
    of each D_i enclosure.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    width = Fraction(width)
    h = hermite(s)
    roots = isolate_real_roots(h, width)
    nonneg = [r for r in roots if r.enclosure.hi >= 0]
    if s % 2:
        # H_s is odd: zero is a root, pin it exactly
        nonneg = [r for r in nonneg if not r.enclosure.contains(0)]
        nonneg.insert(0, CertifiedRoot(h, RatInterval.point(0)))
    zeros: dict[int, CertifiedRoot] = {}
    start = 0 if s % 2 else 1
    for k, root in enumerate(nonneg):
        i = start + k
        zeros[i] = CertifiedRoot(h, root.enclosure, i)
        if i:
            zeros[-i] = CertifiedRoot(h, -root.enclosure, -i)
    if sorted(zeros) != zero_indices(s):
        raise AssertionError(f"unexpected zero layout for H_{s}: {sorted(zeros)}")
    prev = hermite(s - 1)
    d_enc = {}
    d_low = {}
    for i, z in zeros.items():
        enc = abs(interval_eval(prev, z.enclosure))
        d_enc[i] = enc
        d_low[i] = enc.lo
    return HermiteTable(s, h, zeros, d_enc, d_low)


def rounded_down(x: Fraction, digits: int = 4) -> Fraction:
    """Truncate to ``digits`` significant figures (display of D_i as in tables)."""
    if x <= 0:
        return Fraction(0)
    mag = 0
    while Fraction(10) ** (mag + 1) <= x:
        mag += 1
    while Fraction(10) ** mag > x:
        mag -= 1
    return floor_to(x, Fraction(10) ** (mag - digits + 1))


def derivative_identity_check(s: int) -> bool:
    """H_s' == s H_{s-1} as an exact polynomial identity."""
    if s < 1:
        raise ValueError("s must be at least 1")
    return hermite(s).derivative() == s * hermite(s - 1)


def interlacing_check(s: int) -> bool:
    """Zeros of H_{s-1} strictly interlace those of H_s (sign alternation of H_{s-1})."""
    if s < 2:
        return True
    prev = hermite(s - 1)
    roots = isolate_real_roots(hermite(s))
    signs = []
    for r in roots:
        val = interval_eval(prev, r.enclosure)
        if val.lo <= 0 <= val.hi:
            return False
        signs.append(1 if val.lo > 0 else -1)
    return all(a != b for a, b in zip(signs, signs[1:]))


class EstimateFailure(AssertionError):
    """A certified inequality on Hermite zeros did not hold."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise EstimateFailure(what)


def verify_xi_estimates(s: int, table: HermiteTable | None = None) -> dict[str, bool]:
    """Certify the zero-spacing inequalities used by the threshold formulas.

    The "< 3" reading is used for the odd-s and even-s clauses (see README).
    Raises :class:`EstimateFailure` if any certified inequality fails.
    """
    if s < 4:
        raise ValueError("estimates are stated for s >= 4")
    tb = table or build_table(s)
    out: dict[str, bool] = {}
    if s == 4:
        # xi^2 are the roots of y^2 - 6y + 3; (y2 - y1)^2 = 6^2 - 4*3 = 24
        y1, y2 = tb.xi_sq(1), tb.xi_sq(2)
        diff = y2 - y1
        _require(diff.lo > 0 and (diff**2).contains(24), "xi_2^2 - xi_1^2 = 2*sqrt(6)")
        out["s4: xi_2^2 - xi_1^2 = 2 sqrt(6)"] = True
        _require((diff / 3).hi < 2, "(xi_2^2 - xi_1^2)/3 < 2")
        out["s4: (xi_2^2 - xi_1^2)/3 < 2"] = True
        return out
    if s % 2:
        _require(tb.xi_sq(1).hi < 3, f"s={s}: xi_1^2 < 3")
        out[f"s{s}: xi_1^2 < 3"] = True
        return out
    d21 = tb.xi_sq(2) - tb.xi_sq(1)
    if s == 6:
        d31 = tb.xi_sq(3) - tb.xi_sq(1)
        r = d21 / 3
        _require(Fraction(1) < r.lo and r.hi < Fraction(11, 10), "1.0 < (xi_2^2-xi_1^2)/3 < 1.1")
        out["s6: 1.0 < (xi_2^2-xi_1^2)/3 < 1.1"] = True
        r = d31 / 3
        _require(Fraction(7, 2) < r.lo and r.hi < Fraction(18, 5), "3.5 < (xi_3^2-xi_1^2)/3 < 3.6")
        out["s6: 3.5 < (xi_3^2-xi_1^2)/3 < 3.6"] = True
        a = d31 / d21
        _require(Fraction(334634, 100000) < a.lo and a.hi < Fraction(334635, 100000), "3.34634 < a < 3.34635")
        out["s6: 3.34634 < (xi_3^2-xi_1^2)/(xi_2^2-xi_1^2) < 3.34635"] = True
        return out
    _require(d21.hi < 3, f"s={s}: xi_2^2 - xi_1^2 < 3")
    out[f"s{s}: xi_2^2 - xi_1^2 < 3"] = True
    return out


# --- comparison with the published table --------------------------------------------------


@dataclass
class ZeroRowCheck:
    s: int
    i: int
    printed_zero: str
    printed_d: str
    enclosure: RatInterval
    d_lower: Fraction
    zero_rule: str  # "rounded", "truncated" or "" when neither window holds the enclosure
    d_certified: bool

    @property
    def ok(self) -> bool:
        return bool(self.zero_rule) and self.d_certified

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "i": self.i,
            "xi_printed": self.printed_zero,
            "xi_lo": f"{float(self.enclosure.lo):.15f}",
            "xi_hi": f"{float(self.enclosure.hi):.15f}",
            "width": float(self.enclosure.hi - self.enclosure.lo),
            "xi_agrees": self.zero_rule or False,
            "D_printed": self.printed_d,
            "D_lower": f"{float(self.d_lower):.6f}",
            "D_certified": self.d_certified,
            "ok": self.ok,
        }


@dataclass
class TableReport:
    s: int
    poly_matches: bool
    printed: list[int]
    computed: list[int]
    rows: list[ZeroRowCheck]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "H_s": [int(c) for c in self.computed],
            "printed_matches_recurrence": self.poly_matches,
            "printed": self.printed,
            "zeros_and_D": [r.as_dict() for r in self.rows],
            "ok": self.ok,
        }


def _decimal_rule(text: str, enc: RatInterval) -> str:
    """Which reading of a printed decimal is consistent with a certified enclosure."""
    digits = len(text.split(".")[1]) if "." in text else 0
    x = Fraction(text)
    ulp = Fraction(1, 10**digits)
    if x - ulp / 2 <= enc.lo and enc.hi <= x + ulp / 2:
        return "rounded"
    if x <= enc.lo and enc.hi < x + ulp:
        return "truncated"
    return ""


def _surd_sign(x: Fraction, y: Fraction, c: int) -> int:
    """Sign of x + y sqrt(c) for c >= 0."""
    sx, sy = (x > 0) - (x < 0), (y > 0) - (y < 0)
    if sy == 0 or c == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    return sx if x * x > y * y * c else (-sx if x * x < y * y * c else 0)


def _even_part_at(p: UniPoly, a, b, c: int) -> tuple[Fraction, Fraction]:
    """p(x) with x^2 = a + b sqrt(c), for p even, as x + y sqrt(c)."""
    y = (Fraction(a), Fraction(b))
    acc = (Fraction(0), Fraction(0))
    for k in range(p.degree // 2, -1, -1):
        acc = (acc[0] * y[0] + acc[1] * y[1] * c, acc[0] * y[1] + acc[1] * y[0])
        acc = (acc[0] + p.coeffs[2 * k], acc[1])
    return acc


def _surd_is_zero(s: int, a: int, b: int, c: int, xi_sq: RatInterval) -> bool:
    """sqrt(a + b sqrt(c)) is a zero of H_s and its square lies in ``xi_sq``."""
    h = hermite(s)
    even = h if s % 2 == 0 else h * h
    if _even_part_at(even, a, b, c) != (0, 0):
        return False
    return _surd_sign(a - xi_sq.lo, Fraction(b), c) >= 0 and _surd_sign(a - xi_sq.hi, Fraction(b), c) <= 0


def _d_squared_surd(s: int, a: int, b: int, c: int) -> tuple[Fraction, Fraction]:
    """H_{s-1}(xi)^2 as x + y sqrt(c) when xi^2 = a + b sqrt(c)."""
    prev = hermite(s - 1)
    return _even_part_at(prev * prev, a, b, c)


def d_at_least(s: int, i: int, bound: Fraction, table: HermiteTable) -> bool:
    """Certify D_i >= bound; rows with a closed-form zero are decided exactly."""
    from .reference import ZERO_SURDS

    if bound <= table.d_bounds[i]:
        return True
    if (s, i) in ZERO_SURDS:
        a, b, c = ZERO_SURDS[(s, i)]
        if not _surd_is_zero(s, a, b, c, table.xi_sq(i)):
            return False
        x, y = _d_squared_surd(s, a, b, c)
        return _surd_sign(x - bound * bound, y, c) >= 0
    return False


def compare_with_table(s: int, table: HermiteTable | None = None) -> TableReport:
    """Check the printed polynomial, zero decimals and D_i bounds for one s."""
    from .reference import ZERO_ROWS, hermite_row

    tb = table or build_table(s)
    computed = [int(c) for c in tb.poly.coeffs]
    printed = hermite_row(s)
    rows = []
    for i in tb.positive_indices():
        zero_text, d_text = ZERO_ROWS[(s, i)]
        enc = tb.xi(i)
        rows.append(ZeroRowCheck(s, i, zero_text, d_text, enc, tb.d_bounds[i], _decimal_rule(zero_text, enc), d_at_least(s, i, Fraction(d_text), tb)))
    return TableReport(s, printed == computed, printed, computed, rows)

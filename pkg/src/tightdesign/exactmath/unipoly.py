"""Dense univariate polynomials over the rationals, with Sturm-based root isolation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .interval import RatInterval


class NotSquareFreeError(ValueError):
    """Raised when root isolation is asked for on a polynomial with a repeated factor."""


def _to_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class UniPoly:
    """Polynomial with exact rational coefficients, ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-_to_fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(a) if (a != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            parts.append(f"{sign} {body}{mono}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "UniPoly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem[: other.degree])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UniPoly":
        return UniPoly(c / self.lead for c in self.coeffs) if self.coeffs else self

    def __call__(self, x):
        """Evaluate at a rational (or anything supporting + and *)."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a) -> "UniPoly":
        """Return ``p(x + a)``."""
        out = UniPoly()
        xa = UniPoly((a, 1))
        for c in reversed(self.coeffs):
            out = out * xa + UniPoly((c,))
        return out

    def integer_coeffs(self) -> tuple[int, ...]:
        """Primitive integer multiple with the sign of the leading coefficient kept."""
        m = lcm(*(c.denominator for c in self.coeffs))
        return primitive([int(c * m) for c in self.coeffs])


def _coerce(other) -> UniPoly:
    return other if isinstance(other, UniPoly) else UniPoly((other,))


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_square_free(p: UniPoly) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def square_free_part(p: UniPoly) -> UniPoly:
    g = poly_gcd(p, p.derivative())
    return (p // g).monic() if g.degree > 0 else p.monic()


# --- integer Sturm machinery ------------------------------------------------------------


def primitive(cs: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for c in cs:
        g = gcd(g, c)
    if g in (0, 1):
        return tuple(cs)
    return tuple(c // g for c in cs)


def _int_prem_neg(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Negated remainder of ``a`` by ``b`` up to a positive factor, made primitive."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = 0
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bc in enumerate(b):
            r[shift + j] -= lr * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        steps += 1
    if lb < 0 and steps % 2:
        r = [-c for c in r]
    return primitive([-c for c in r])


def int_sign_at(cs: Sequence[int], num: int, den: int = 1) -> int:
    """Sign of the integer polynomial at ``num/den`` (den > 0), without fractions."""
    acc = 0
    dpow = 1
    for c in reversed(cs):
        acc = acc * num + c * dpow
        dpow *= den
    # acc equals p(num/den) * den**deg
    return (acc > 0) - (acc < 0)


def sturm_sequence(p: UniPoly) -> list[tuple[int, ...]]:
    """Sturm chain of ``p`` as primitive integer polynomials (positive rescalings of the classical chain)."""
    p0 = p.integer_coeffs()
    p1 = primitive(UniPoly(p0).derivative().integer_coeffs()) if len(p0) > 1 else ()
    chain = [p0]
    if not p1:
        return chain
    chain.append(p1)
    while len(chain[-1]) > 1:
        nxt = _int_prem_neg(chain[-2], chain[-1])
        if not nxt:
            break
        chain.append(nxt)
    return chain


def _sign_changes(signs: Iterable[int]) -> int:
    last = 0
    n = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            n += 1
        last = s
    return n


def sturm_variations(chain: Sequence[tuple[int, ...]], x: Fraction | None, at: int = 0) -> int:
    """Sign variations of the chain at ``x``; ``x=None`` with ``at=+1/-1`` means +/- infinity."""
    if x is None:
        signs = []
        for c in chain:
            s = 1 if c[-1] > 0 else -1
            if at < 0 and (len(c) - 1) % 2:
                s = -s
            signs.append(s)
        return _sign_changes(signs)
    return _sign_changes(int_sign_at(c, x.numerator, x.denominator) for c in chain)


def count_real_roots(p: UniPoly, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]; None means infinite."""
    chain = sturm_sequence(p)
    vlo = sturm_variations(chain, lo, -1)
    vhi = sturm_variations(chain, hi, +1)
    return vlo - vhi


def cauchy_bound(p: UniPoly) -> Fraction:
    """A power of two strictly exceeding the modulus of every root."""
    lead = abs(p.lead)
    m = max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    b = Fraction(1)
    while b <= 1 + m:
        b *= 2
    return b


# --- certified roots ---------------------------------------------------------------------


@dataclass(frozen=True)
class CertifiedRoot:
    """A real algebraic number: the unique root of ``defining`` inside ``enclosure``."""

    defining: UniPoly
    enclosure: RatInterval
    index: int = 0

    @property
    def exact(self) -> bool:
        return self.enclosure.lo == self.enclosure.hi

    def refine(self, width) -> "CertifiedRoot":
        """Bisect the enclosure until it is narrower than ``width``."""
        width = Fraction(width)
        lo, hi = self.enclosure.lo, self.enclosure.hi
        p = self.defining
        if lo == hi:
            return self
        slo = _sign(p(lo))
        shi = _sign(p(hi))
        if slo == 0:
            return CertifiedRoot(p, RatInterval(lo, lo), self.index)
        if shi == 0:
            return CertifiedRoot(p, RatInterval(hi, hi), self.index)
        if slo == shi:
            raise ValueError("enclosure does not bracket a sign change")
        while hi - lo >= width:
            mid = (lo + hi) / 2
            sm = _sign(p(mid))
            if sm == 0:
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return CertifiedRoot(p, RatInterval(lo, hi), self.index)

    def __float__(self) -> float:
        return float(self.enclosure.mid)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def isolate_real_roots(p: UniPoly, width=Fraction(1, 10**15)) -> list[CertifiedRoot]:
    """Isolate every real root of a square-free polynomial.

    Sturm counts drive the splitting; once an interval holds a single root with
    nonzero endpoint values, plain sign bisection takes over. Results are sorted
    ascending and each enclosure is narrower than ``width`` (exact roots hit by a
    bisection point get a degenerate enclosure).
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    if not is_square_free(p):
        raise NotSquareFreeError(f"polynomial has a repeated factor: {p}")
    width = Fraction(width)
    chain = sturm_sequence(p)
    bound = cauchy_bound(p)

    def var(x: Fraction) -> int:
        return sturm_variations(chain, x)

    def root_at(x: Fraction) -> bool:
        return p(x) == 0

    def count_open(a, va, b, vb) -> int:
        return va - vb - (1 if root_at(b) else 0)

    found: list[RatInterval] = []
    a, b = -bound, bound
    stack = [(a, var(a), b, var(b))]
    while stack:
        a, va, b, vb = stack.pop()
        n = count_open(a, va, b, vb)
        if n == 0:
            continue
        if n == 1 and not root_at(a) and not root_at(b):
            root = CertifiedRoot(p, RatInterval(a, b)).refine(width)
            found.append(root.enclosure)
            continue
        mid = (a + b) / 2
        vm = var(mid)
        if root_at(mid):
            found.append(RatInterval(mid, mid))
        stack.append((a, va, mid, vm))
        stack.append((mid, vm, b, vb))
    found.sort(key=lambda iv: iv.lo)
    roots = [CertifiedRoot(p, iv, k) for k, iv in enumerate(found)]
    expected = sturm_variations(chain, None, -1) - sturm_variations(chain, None, +1)
    if len(roots) != expected:
        raise AssertionError(f"isolated {len(roots)} roots, Sturm count says {expected}")
    return roots


def integer_roots_in(p: UniPoly, lo: int, hi: int) -> list[int]:
    """Integer roots of ``p`` in [lo, hi], found by exact evaluation at every candidate."""
    return [n for n in range(lo, hi + 1) if p(Fraction(n)) == 0]

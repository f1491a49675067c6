"""Sparse multivariate polynomials whose coefficients are rational functions of ``t``.

The only denominators ever needed are ``c * t**a * (t-1)**b`` with ``c`` a positive
integer, so a :class:`SymbolicPoly` keeps an integer numerator in (gens..., t) over one
such common denominator. Exponent tuples are packed into a single int key (12 bits a
slot, ``t`` in the lowest slot) which keeps the inner multiplication loop cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Mapping, Sequence

from .interval import RatInterval, as_interval

BITS = 12
MASK = (1 << BITS) - 1


class RepresentationError(ValueError):
    """A result would need a denominator outside ``c * t^a * (t-1)^b``."""


# --- helpers on dense integer t-polynomials ----------------------------------------------


def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _tpoly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _tpoly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _tm1_power(e: int) -> list[int]:
    """Coefficients of (t - 1)**e."""
    return [comb(e, l) * (-1) ** (e - l) for l in range(e + 1)]


def _div_tm1(cs: Sequence[int]) -> list[int]:
    """Exact division by (t - 1); caller guarantees sum(cs) == 0."""
    n = len(cs) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc += cs[i]
        q[i - 1] = acc
    return q


# --- RatFun ------------------------------------------------------------------------------


class RatFun:
    """``num(t) / (c * t**a * (t-1)**b)`` with integer ``num`` and positive integer ``c``.

    Normal form: no factor ``t`` or ``t-1`` is shared between numerator and denominator,
    and ``gcd(content(num), c) == 1``. The zero function is ``num == ()``, ``c == 1``.
    """

    __slots__ = ("num", "c", "a", "b")

    def __init__(self, num: Iterable[int] = (), c: int = 1, a: int = 0, b: int = 0):
        num = _trim([int(x) for x in num])
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if c < 0:
            num, c = [-x for x in num], -c
        if not num:
            self.num, self.c, self.a, self.b = (), 1, 0, 0
            return
        while a > 0 and num[0] == 0:
            num.pop(0)
            a -= 1
        if a < 0:
            num = [0] * (-a) + num
            a = 0
        while b > 0 and sum(num) == 0:
            num = _div_tm1(num)
            b -= 1
        if b < 0:
            num = _tpoly_mul(num, _tm1_power(-b))
            b = 0
        g = c
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            num = [x // g for x in num]
            c //= g
        self.num, self.c, self.a, self.b = tuple(num), c, a, b

    @classmethod
    def const(cls, q) -> "RatFun":
        q = Fraction(q)
        return cls((q.numerator,), q.denominator)

    @classmethod
    def t(cls) -> "RatFun":
        return cls((0, 1))

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return (self.num, self.c, self.a, self.b) == (other.num, other.c, other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.num, self.c, self.a, self.b))

    def __repr__(self) -> str:
        return f"RatFun(num={list(self.num)}, c={self.c}, a={self.a}, b={self.b})"

    def __neg__(self) -> "RatFun":
        return RatFun([-x for x in self.num], self.c, self.a, self.b)

    def __add__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        c = lcm(self.c, other.c)
        a = max(self.a, other.a)
        b = max(self.b, other.b)

        def lift(f: RatFun) -> list[int]:
            n = [x * (c // f.c) for x in f.num]
            n = [0] * (a - f.a) + n
            if b > f.b:
                n = _tpoly_mul(n, _tm1_power(b - f.b))
            return n

        return RatFun(_tpoly_add(lift(self), lift(other)), c, a, b)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFun":
        return RatFun.const(other) - self

    def __mul__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return RatFun(_tpoly_mul(self.num, other.num), self.c * other.c, self.a + other.a, self.b + other.b)

    __rmul__ = __mul__

    def divide_by(self, c: int = 1, a: int = 0, b: int = 0) -> "RatFun":
        """Divide by ``c * t**a * (t-1)**b`` (the only admissible divisors)."""
        return RatFun(self.num, self.c * c, self.a + a, self.b + b)

    def __truediv__(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            if other.is_zero():
                raise ZeroDivisionError("division by the zero rational function")
            # other = num / den, with num required to be +-m * t^i * (t-1)^j
            num = list(other.num)
            i = 0
            while num and num[0] == 0:
                num.pop(0)
                i += 1
            j = 0
            while len(num) > 1 and sum(num) == 0:
                num = _div_tm1(num)
                j += 1
            if len(num) != 1:
                raise RepresentationError(f"cannot divide by {other!r}: not of the form c*t^a*(t-1)^b")
            m = num[0]
            sign = 1 if m > 0 else -1
            out = RatFun([sign * x * other.c for x in self.num], self.c * abs(m), self.a + i, self.b + j)
            # multiply back the denominator factors of `other`
            return out * RatFun(_tpoly_mul([0] * other.a + [1], _tm1_power(other.b)))
        q = Fraction(other)
        return RatFun([x * q.denominator for x in self.num], self.c * q.numerator, self.a, self.b)

    def __call__(self, t):
        """Evaluate at a rational or an interval of ``t``."""
        if isinstance(t, RatInterval):
            acc = RatInterval.point(0)
            for x in reversed(self.num):
                acc = acc * t + x
            den = t**self.a * (t - 1) ** self.b * self.c
            return acc / den
        t = Fraction(t)
        acc = Fraction(0)
        for x in reversed(self.num):
            acc = acc * t + x
        return acc / (self.c * t**self.a * (t - 1) ** self.b)

    def degree_num(self) -> int:
        return len(self.num) - 1

    def in_u(self) -> tuple[list[Fraction], int, int]:
        """Rewrite in ``u = 1/t``: returns ``(U, e, f)`` with ``self = U(u) * u**e * (1-u)**(-f)``."""
        # num(t) = sum n_k u^-k ; t^-a = u^a ; (t-1)^-b = u^b (1-u)^-b
        d = len(self.num) - 1
        U = [Fraction(self.num[d - k], self.c) for k in range(d + 1)]  # num(t) = u^-d * U(u)
        return U, self.a + self.b - d, self.b


# --- SymbolicPoly ------------------------------------------------------------------------


def _pack(exps: Sequence[int], it: int) -> int:
    key = it
    for g, e in enumerate(exps):
        key |= e << (BITS * (g + 1))
    return key


def _unpack(key: int, ngens: int) -> tuple[tuple[int, ...], int]:
    it = key & MASK
    exps = tuple((key >> (BITS * (g + 1))) & MASK for g in range(ngens))
    return exps, it


class SymbolicPoly:
    """Polynomial in the named generators with coefficients in Q(t), restricted denominators.

    Value: ``sum(num[key] * gens^e * t^k) / (c * t**a * (t-1)**b)``.
    """

    __slots__ = ("gens", "num", "c", "a", "b")

    def __init__(self, gens: Sequence[str], num: Mapping[int, int] | None = None, c: int = 1, a: int = 0, b: int = 0):
        self.gens = tuple(gens)
        self.num = {k: v for k, v in (num or {}).items() if v}
        self.c, self.a, self.b = c, a, b
        if self.c < 0:
            self.num = {k: -v for k, v in self.num.items()}
            self.c = -self.c

    # construction
    @classmethod
    def const(cls, q, gens: Sequence[str]) -> "SymbolicPoly":
        return cls.from_ratfun(q if isinstance(q, RatFun) else RatFun.const(q), gens)

    @classmethod
    def gen(cls, name: str, gens: Sequence[str]) -> "SymbolicPoly":
        gens = tuple(gens)
        exps = [0] * len(gens)
        exps[gens.index(name)] = 1
        return cls(gens, {_pack(exps, 0): 1})

    @classmethod
    def from_ratfun(cls, f: RatFun, gens: Sequence[str], exps: Sequence[int] | None = None) -> "SymbolicPoly":
        gens = tuple(gens)
        exps = tuple(exps) if exps is not None else (0,) * len(gens)
        return cls(gens, {_pack(exps, k): x for k, x in enumerate(f.num)}, f.c, f.a, f.b)

    @classmethod
    def from_terms(cls, gens: Sequence[str], terms: Mapping[tuple[int, ...], RatFun]) -> "SymbolicPoly":
        out = cls(gens)
        for exps, f in terms.items():
            out = out + cls.from_ratfun(f, gens, exps)
        return out.normalize()

    # structure
    def is_zero(self) -> bool:
        return not self.num

    def copy(self) -> "SymbolicPoly":
        return SymbolicPoly(self.gens, dict(self.num), self.c, self.a, self.b)

    def _check(self, other: "SymbolicPoly") -> None:
        if other.gens != self.gens:
            raise ValueError(f"generator mismatch {self.gens} vs {other.gens}")

    def _coerce(self, other) -> "SymbolicPoly":
        if isinstance(other, SymbolicPoly):
            self._check(other)
            return other
        return SymbolicPoly.const(other, self.gens)

    def _lift(self, c: int, a: int, b: int) -> dict[int, int]:
        """Numerator re-expressed over the (larger) denominator c t^a (t-1)^b."""
        fac = c // self.c
        da, db = a - self.a, b - self.b
        num = self.num if fac == 1 and da == 0 else {k + da: v * fac for k, v in self.num.items()}
        if db:
            binom = _tm1_power(db)
            out: dict[int, int] = {}
            for k, v in num.items():
                for l, bl in enumerate(binom):
                    kk = k + l
                    out[kk] = out.get(kk, 0) + v * bl
            num = out
        return num

    def __add__(self, other) -> "SymbolicPoly":
        other = self._coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        c = lcm(self.c, other.c)
        a = max(self.a, other.a)
        b = max(self.b, other.b)
        out = dict(self._lift(c, a, b))
        for k, v in other._lift(c, a, b).items():
            out[k] = out.get(k, 0) + v
        return SymbolicPoly(self.gens, out, c, a, b)

    __radd__ = __add__

    def __neg__(self) -> "SymbolicPoly":
        return SymbolicPoly(self.gens, {k: -v for k, v in self.num.items()}, self.c, self.a, self.b)

    def __sub__(self, other) -> "SymbolicPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SymbolicPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SymbolicPoly":
        other = self._coerce(other)
        out: dict[int, int] = {}
        get = out.get
        items2 = list(other.num.items())
        for k1, v1 in self.num.items():
            for k2, v2 in items2:
                k = k1 + k2
                out[k] = get(k, 0) + v1 * v2
        return SymbolicPoly(self.gens, out, self.c * other.c, self.a + other.a, self.b + other.b)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SymbolicPoly":
        out = SymbolicPoly.const(1, self.gens)
        for _ in range(n):
            out = (out * self).normalize()
        return out

    def divide_by(self, c: int = 1, a: int = 0, b: int = 0) -> "SymbolicPoly":
        return SymbolicPoly(self.gens, dict(self.num), self.c * c, self.a + a, self.b + b)

    def __truediv__(self, other) -> "SymbolicPoly":
        if isinstance(other, SymbolicPoly):
            terms = other.terms()
            if len(terms) != 1 or any(e for e in next(iter(terms))):
                raise RepresentationError("division by a non-constant polynomial")
            other = next(iter(terms.values()))
        if isinstance(other, RatFun):
            inv = RatFun.const(1) / other
            return (self * SymbolicPoly.from_ratfun(inv, self.gens)).normalize()
        q = Fraction(other)
        num = {k: v * q.denominator for k, v in self.num.items()}
        return SymbolicPoly(self.gens, num, self.c * q.numerator, self.a, self.b).normalize()

    def normalize(self) -> "SymbolicPoly":
        """Cancel shared factors t, t-1 and integer content against the denominator."""
        num = {k: v for k, v in self.num.items() if v}
        c, a, b = self.c, self.a, self.b
        if not num:
            return SymbolicPoly(self.gens, {}, 1, 0, 0)
        if a:
            m = min(k & MASK for k in num)
            d = min(m, a)
            if d:
                num = {k - d: v for k, v in num.items()}
                a -= d
        while b:
            groups: dict[int, int] = {}
            for k, v in num.items():
                g = k >> BITS
                groups[g] = groups.get(g, 0) + v
            if any(groups.values()):
                break
            num = _div_tm1_sparse(num)
            b -= 1
        g = c
        for v in num.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            num = {k: v // g for k, v in num.items()}
            c //= g
        return SymbolicPoly(self.gens, num, c, a, b)

    def terms(self) -> dict[tuple[int, ...], RatFun]:
        """Map from generator exponents to the normalized RatFun coefficient."""
        groups: dict[tuple[int, ...], dict[int, int]] = {}
        n = len(self.gens)
        for k, v in self.num.items():
            exps, it = _unpack(k, n)
            groups.setdefault(exps, {})[it] = v
        out = {}
        for exps, tp in groups.items():
            dense = [0] * (max(tp) + 1)
            for it, v in tp.items():
                dense[it] = v
            f = RatFun(dense, self.c, self.a, self.b)
            if not f.is_zero():
                out[exps] = f
        return out

    def degree(self, name: str) -> int:
        g = self.gens.index(name)
        shift = BITS * (g + 1)
        return max(((k >> shift) & MASK for k in self.num), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicPoly):
            other = SymbolicPoly.const(other, self.gens)
        return (self - other).normalize().is_zero()

    def __hash__(self):  # pragma: no cover - mutable-ish container semantics
        raise TypeError("SymbolicPoly is not hashable")

    def __repr__(self) -> str:
        return f"SymbolicPoly(gens={self.gens}, terms={len(self.num)}, den=({self.c}, t^{self.a}, (t-1)^{self.b}))"

    def coefficient(self, name: str, j: int) -> "SymbolicPoly":
        """Coefficient of ``name**j`` as a polynomial in the remaining generators."""
        g = self.gens.index(name)
        rest = tuple(x for x in self.gens if x != name)
        n = len(self.gens)
        out: dict[int, int] = {}
        for k, v in self.num.items():
            exps, it = _unpack(k, n)
            if exps[g] == j:
                out[_pack(exps[:g] + exps[g + 1:], it)] = v
        return SymbolicPoly(rest, out, self.c, self.a, self.b).normalize()

    def with_gens(self, gens: Sequence[str]) -> "SymbolicPoly":
        """Re-embed into a (super)set of generators."""
        gens = tuple(gens)
        idx = [gens.index(x) for x in self.gens]
        out = {}
        n = len(self.gens)
        for k, v in self.num.items():
            exps, it = _unpack(k, n)
            new = [0] * len(gens)
            for e, i in zip(exps, idx):
                new[i] = e
            out[_pack(new, it)] = v
        return SymbolicPoly(gens, out, self.c, self.a, self.b)

    def evaluate(self, values: Mapping[str, object], t):
        """Numeric evaluation at rational/interval generator values and ``t``."""
        total = None
        for exps, f in self.terms().items():
            term = f(t)
            for name, e in zip(self.gens, exps):
                if e:
                    term = term * (values[name] ** e)
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total


def _div_tm1_sparse(num: dict[int, int]) -> dict[int, int]:
    groups: dict[int, dict[int, int]] = {}
    for k, v in num.items():
        groups.setdefault(k >> BITS, {})[k & MASK] = v
    out: dict[int, int] = {}
    for g, tp in groups.items():
        dense = [0] * (max(tp) + 1)
        for it, v in tp.items():
            dense[it] = v
        for it, v in enumerate(_div_tm1(dense)):
            if v:
                out[(g << BITS) | it] = v
    return out


def substitute(p: SymbolicPoly, assignments: Mapping[str, SymbolicPoly], gens: Sequence[str] | None = None) -> SymbolicPoly:
    """Replace generators by SymbolicPoly expressions (all over the target ``gens``)."""
    if gens is None:
        gens = next(iter(assignments.values())).gens if assignments else p.gens
    gens = tuple(gens)
    powers: dict[tuple[str, int], SymbolicPoly] = {}

    def power(name: str, e: int) -> SymbolicPoly:
        if (name, e) not in powers:
            base = assignments[name] if name in assignments else SymbolicPoly.gen(name, gens)
            powers[(name, e)] = SymbolicPoly.const(1, gens) if e == 0 else (power(name, e - 1) * base).normalize()
        return powers[(name, e)]

    out = SymbolicPoly(gens)
    for exps, f in p.terms().items():
        term = SymbolicPoly.from_ratfun(f, gens)
        for name, e in zip(p.gens, exps):
            if e:
                term = term * power(name, e)
        out = out + term
    return out.normalize()


def coefficient_of_beta(p: SymbolicPoly, j: int, beta: str = "beta") -> SymbolicPoly:
    return p.coefficient(beta, j)


def falling_factorial(y: SymbolicPoly, m: int) -> SymbolicPoly:
    """``y (y-1) ... (y-m+1)``."""
    out = SymbolicPoly.const(1, y.gens)
    for j in range(m):
        out = (out * (y - j)).normalize()
    return out

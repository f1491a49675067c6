"""The s = 4 case: the integer polynomial f(k, v), a per-k integer-root scan and congruence sieves.

A nontrivial tight 8-design whose outer zero gap equals one forces the
root-centred quartic x^4 + p2 x^2 + p3 x + p4 to satisfy
p4 = (p2/2 + 1/8)^2 - p3^2. Writing p2, p3, p4 in k and v and clearing
denominators gives f(k, v) = 0.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, isqrt
from pathlib import Path

from .design import psi
from .exactmath import UniPoly
from .exactmath.unipoly import int_sign_at, primitive, sturm_sequence, sturm_variations
from .reference import f_literal, g_literal

log = logging.getLogger(__name__)

BLOCK = 500


class DerivationError(AssertionError):
    pass


class BivarPoly:
    """Polynomial in (k, v) with rational coefficients, stored as {(i, j): c} for c k^i v^j."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def k(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    def __eq__(self, other) -> bool:
        return isinstance(other, BivarPoly) and self.terms == other.terms

    def __add__(self, other) -> "BivarPoly":
        other = _lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "BivarPoly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "BivarPoly":
        return _lift(other) - self

    def __mul__(self, other) -> "BivarPoly":
        other = _lift(other)
        out: dict = {}
        for (a, b), c in self.terms.items():
            for (p, q), d in other.terms.items():
                key = (a + p, b + q)
                out[key] = out.get(key, 0) + c * d
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivarPoly":
        out = BivarPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def degrees(self) -> tuple[int, int]:
        return max(e[0] for e in self.terms), max(e[1] for e in self.terms)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def __call__(self, k, v) -> Fraction:
        return sum((c * Fraction(k) ** a * Fraction(v) ** b for (a, b), c in self.terms.items()), Fraction(0))

    def in_v(self, k) -> UniPoly:
        """f(k, .) as a polynomial in v."""
        k = Fraction(k)
        deg = self.degrees()[1]
        cs = [Fraction(0)] * (deg + 1)
        for (a, b), c in self.terms.items():
            cs[b] += c * k**a
        return UniPoly(cs)

    def div_v_minus(self, a: int) -> "BivarPoly | None":
        """Exact quotient by (v - a), or None when it does not divide."""
        by_k: dict[int, list[Fraction]] = {}
        deg = self.degrees()[1]
        for (i, j), c in self.terms.items():
            by_k.setdefault(i, [Fraction(0)] * (deg + 1))[j] += c
        out = {}
        for i, cs in by_k.items():
            # synthetic division from the top
            q = [Fraction(0)] * deg
            carry = Fraction(0)
            for j in range(deg, 0, -1):
                carry = cs[j] + carry * a if j < deg else cs[j]
                q[j - 1] = carry
            if cs[0] + q[0] * a != 0:
                return None
            for j, c in enumerate(q):
                if c:
                    out[(i, j)] = c
        return BivarPoly(out)

    def primitive_integer(self) -> "BivarPoly":
        """Scale to coprime integer coefficients with a positive k-leading term."""
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        lead = max(ints, key=lambda e: (e[0], -e[1]))
        sign = 1 if ints[lead] > 0 else -1
        return BivarPoly({e: sign * c // g for e, c in ints.items()})

    def int_terms(self) -> dict[tuple[int, int], int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return {e: int(c) for e, c in self.terms.items()}


def _lift(x) -> BivarPoly:
    return x if isinstance(x, BivarPoly) else BivarPoly.const(x)


def _g_poly() -> BivarPoly:
    return BivarPoly(g_literal())


def _q_factor(k, v):
    return (k - 3) * (k - 4) * (v - k - 3) * (v - k - 4)


@dataclass(frozen=True)
class S4Coefficients:
    k: int
    v: int
    p2: Fraction
    p3: Fraction
    p4: Fraction
    r1: Fraction | None = None
    r2: Fraction | None = None

    def identity_residual(self) -> Fraction:
        """p4 - (p2/2 + 1/8)^2 + p3^2, zero exactly when f(k, v) = 0."""
        return self.p4 - (self.p2 / 2 + Fraction(1, 8)) ** 2 + self.p3**2

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "v": self.v,
            "p2": str(self.p2),
            "p3": str(self.p3),
            "p4": str(self.p4),
            "r1": None if self.r1 is None else str(self.r1),
            "r2": None if self.r2 is None else str(self.r2),
        }


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def p_coeffs(k: int, v: int, cross_check: bool = True) -> S4Coefficients:
    """p2, p3, p4 of the root-centred monic quartic for given (k, v)."""
    if k < 9 or v < 11:
        raise ValueError(f"need k >= 9 and v >= 11, got k={k} v={v}")
    q = _q_factor(k, v)
    g = _g_poly()(k, v)
    p2 = Fraction(-5, 2) - Fraction(6 * q, (v - 6) * (v - 7) ** 2)
    p3 = Fraction(-4 * q * (v - 2 * k + 1) * (v - 2 * k - 1), (v - 5) * (v - 6) * (v - 7) ** 3)
    p4 = Fraction(9, 16) + Fraction(3, 2) * q * g / ((v - 4) * (v - 5) * (v - 6) * (v - 7) ** 4)
    if cross_check:
        shifted = shifted_psi4(k, v)
        want = (Fraction(0), p2, p3, p4)
        got = tuple(shifted.coeffs[3 - d] for d in range(4))
        if got != want:
            raise DerivationError(f"closed-form p coefficients disagree with shifted Psi_4 at k={k} v={v}")
    # r1^2 + r2^2 = -1/8 - p2 and r1^2 - r2^2 = 2 p3
    r1 = _rational_sqrt((Fraction(-1, 8) - p2 + 2 * p3) / 2)
    r2 = _rational_sqrt((Fraction(-1, 8) - p2 - 2 * p3) / 2)
    return S4Coefficients(k, v, p2, p3, p4, r1, r2)


def shifted_psi4(k: int, v: int) -> UniPoly:
    """24 Psi_4(x + alpha_bar) / C(v-4, 4), which is monic with no cubic term."""
    p = psi(4, v, k)
    abar = -p.coeffs[3] / (4 * p.coeffs[4])
    return p.shift(abar) * Fraction(24, comb(v - 4, 4))


def derive_f() -> BivarPoly:
    """Build f(k, v) from the closed forms and compare it with the stored literal."""
    k, v = BivarPoly.k(), BivarPoly.v()
    q = _q_factor(k, v)
    g = _g_poly()
    # common denominator L = 256 (v-4)^2 (v-5)^2 (v-6)^2 (v-7)^8 for every term
    w4, w5, w6, w7 = v - 4, v - 5, v - 6, v - 7
    L = 256 * w4**2 * w5**2 * w6**2 * w7**8
    p2 = (Fraction(-5, 2) * w6 * w7**2 - 6 * q, w6 * w7**2)
    p3 = (-4 * q * (v - 2 * k + 1) * (v - 2 * k - 1), w5 * w6 * w7**3)
    p4 = (Fraction(9, 16) * w4 * w5 * w6 * w7**4 + Fraction(3, 2) * q * g, w4 * w5 * w6 * w7**4)
    # p4 - (p2/2 + 1/8)^2 + p3^2, each term times L
    half = (p2[0] * 4 + p2[1], 8 * p2[1])  # p2/2 + 1/8
    lhs = p4[0] * (256 * w4 * w5 * w6 * w7**4)
    lhs = lhs - half[0] ** 2 * (4 * w4**2 * w5**2 * w7**4)
    lhs = lhs + p3[0] ** 2 * (256 * w4**2 * w7**2)
    _check_denominators(L, p4[1] * 256 * w4 * w5 * w6 * w7**4, half[1] ** 2 * 4 * w4**2 * w5**2 * w7**4, p3[1] ** 2 * 256 * w4**2 * w7**2)
    for a in (4, 5, 6, 7):
        while True:
            quo = lhs.div_v_minus(a)
            if quo is None:
                break
            lhs = quo
    f = lhs.primitive_integer()
    compare_with_literal(f)
    return f


def _check_denominators(L: BivarPoly, *scaled: BivarPoly) -> None:
    for d in scaled:
        if d != L:
            raise DerivationError("denominator bookkeeping does not reach the common denominator")


def compare_with_literal(f: BivarPoly) -> None:
    want = f_literal()
    got = f.int_terms()
    diff = sorted(set(want) | set(got))
    bad = [(e, got.get(e, 0), want.get(e, 0)) for e in diff if got.get(e, 0) != want.get(e, 0)]
    if bad:
        lines = ", ".join(f"k^{a} v^{b}: derived {x} vs stored {y}" for (a, b), x, y in bad[:20])
        raise DerivationError(f"{len(bad)} monomials differ: {lines}")


def f_poly() -> BivarPoly:
    """The stored integer polynomial f(k, v)."""
    return BivarPoly(f_literal())


# --- integer-root scan ---------------------------------------------------------------------


def _coeffs_at_k(terms: dict[tuple[int, int], int], k: int, deg: int) -> list[int]:
    cs = [0] * (deg + 1)
    for (a, b), c in terms.items():
        cs[b] += c * k**a
    return cs


def _int_roots_above(cs: list[int], lo: int) -> list[int]:
    """Integer zeros v > lo of the integer polynomial ``cs`` (low to high), by Sturm isolation."""
    while cs and cs[-1] == 0:
        cs.pop()
    p = UniPoly(cs)
    if p.degree <= 0:
        return []
    chain = [primitive(c) for c in sturm_sequence(p)]

    def var(x: int) -> int:
        return _variations([int_sign_at(c, x) for c in chain])

    # integer Cauchy bound: 1 + max |c_i / c_n|
    lead = abs(cs[-1])
    top = 1 + max(-(-abs(c) // lead) for c in cs[:-1]) if len(cs) > 1 else 1
    out = []
    if top <= lo:
        return out
    stack = [(lo, var(lo), top, var(top))]
    while stack:
        a, va, b, vb = stack.pop()
        n = va - vb  # roots in (a, b]
        if n == 0:
            continue
        if b - a == 1:
            if int_sign_at(cs, b) == 0:
                out.append(b)
            continue
        mid = (a + b) // 2
        vm = var(mid)
        stack.append((a, va, mid, vm))
        stack.append((mid, vm, b, vb))
    return sorted(out)


def _variations(signs) -> int:
    prev = 0
    n = 0
    for sg in signs:
        if sg == 0:
            continue
        if prev and sg != prev:
            n += 1
        prev = sg
    return n


def scan_block(k_lo: int, k_hi: int, terms: dict | None = None) -> list[tuple[int, int]]:
    """Integer zeros (k, v) of f with k in [k_lo, k_hi] and v > 2k + 1."""
    terms = terms or f_literal()
    deg = max(e[1] for e in terms)
    out = []
    for k in range(k_lo, k_hi + 1):
        for v in _int_roots_above(_coeffs_at_k(terms, k, deg), 2 * k + 1):
            out.append((k, v))
    return out


@dataclass
class ScanReport:
    k_lo: int
    k_hi: int
    solutions: list[tuple[int, int]]
    blocks: int
    seconds: float = 0.0

    def body(self) -> dict:
        return {"k_lo": self.k_lo, "k_hi": self.k_hi, "blocks": self.blocks, "solutions": [list(x) for x in self.solutions]}

    def as_dict(self) -> dict:
        return {**self.body(), "seconds": round(self.seconds, 3)}


def scan_k_range(k_lo: int, k_hi: int, jobs: int = 1, checkpoint_path: str | None = None) -> ScanReport:
    """Scan k_lo <= k <= k_hi in blocks, resuming completed blocks from the checkpoint.

    Checkpoint lines read ``<k_lo>-<k_hi> done <json solutions>``.
    """
    if not 9 <= k_lo <= k_hi:
        raise ValueError(f"need 9 <= k_lo <= k_hi, got {k_lo}, {k_hi}")
    t0 = time.perf_counter()
    blocks = [(a, min(a + BLOCK - 1, k_hi)) for a in range(k_lo, k_hi + 1, BLOCK)]
    done = _read_blocks(checkpoint_path) if checkpoint_path else {}
    todo = [b for b in blocks if b not in done]
    terms = f_literal()
    fh = open(checkpoint_path, "a") if checkpoint_path else None
    try:
        if jobs == 1:
            results = (scan_block(a, b, terms) for a, b in todo)
        else:
            pool = ProcessPoolExecutor(jobs)
            results = pool.map(scan_block, [a for a, _ in todo], [b for _, b in todo], [terms] * len(todo))
        for blk, sols in zip(todo, results):
            done[blk] = sols
            if fh:
                fh.write(f"{blk[0]}-{blk[1]} done {json.dumps([list(x) for x in sols])}\n")
                fh.flush()
        if jobs != 1:
            pool.shutdown()
    finally:
        if fh:
            fh.close()
    sols = sorted(x for b in blocks for x in done[b])
    return ScanReport(k_lo, k_hi, sols, len(blocks), time.perf_counter() - t0)


def _read_blocks(path: str) -> dict[tuple[int, int], list[tuple[int, int]]]:
    p = Path(path)
    out: dict = {}
    if not p.exists():
        return out
    for no, line in enumerate(p.read_text().splitlines(), 1):
        try:
            rng, word, payload = line.split(" ", 2)
            a, b = (int(x) for x in rng.split("-"))
            if word != "done":
                raise ValueError(word)
            out[(a, b)] = [tuple(int(y) for y in x) for x in json.loads(payload)]
        except ValueError as err:
            raise ValueError(f"{path}:{no}: malformed checkpoint line ({err})") from None
    return out


# --- congruence sieve ----------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, isqrt(p) + 1))


@dataclass
class SieveResult:
    p: int
    k_classes: list[int] = field(default_factory=list)
    v_classes: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"p": self.p, "excluded_k": self.k_classes, "excluded_v": self.v_classes}


def reduce_mod(terms: dict[tuple[int, int], int], p: int) -> list[list[int]]:
    """Value table f(a, b) mod p for all residues a, b."""
    table = [[0] * p for _ in range(p)]
    for a in range(p):
        for b in range(p):
            table[a][b] = sum(c * pow(a, i, p) * pow(b, j, p) for (i, j), c in terms.items()) % p
    return table


def congruence_sieve(p: int, terms: dict | None = None) -> SieveResult:
    """Residue classes of k (and of v) mod p on which f never vanishes mod p."""
    if not _is_prime(p) or p <= 3:
        raise ValueError(f"need a prime p > 3, got {p}")
    table = reduce_mod(terms or f_literal(), p)
    ks = [a for a in range(p) if all(table[a][b] for b in range(p))]
    vs = [b for b in range(p) if all(table[a][b] for a in range(p))]
    return SieveResult(p, ks, vs)

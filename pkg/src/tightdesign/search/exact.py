"""Exact (pure-integer) pieces of the small-beta search: g_alpha, the n-range and both scan phases.

Throughout alpha = m/s, so every test reduces to integer arithmetic:
g_alpha(n) = c m^2 (n+1)(n+2) / (s (s n^2 + s n + m)) with c = C(s, 2).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt

DEFAULT_THRESHOLD = Fraction(1, 2)


def g_alpha(s: int, alpha, n: int) -> Fraction:
    alpha = Fraction(alpha)
    return comb(s, 2) * alpha**2 * (1 + (2 * n - alpha + 2) / (n * n + n + alpha))


def g_from_t(s: int, alpha, t) -> Fraction:
    """The same quantity written in terms of t = n / alpha."""
    alpha, t = Fraction(alpha), Fraction(t)
    return comb(s, 2) * alpha * (alpha + (2 * alpha * t - alpha + 2) / (alpha * t * t + t + 1))


def g_parts(s: int, m: int, n: int) -> tuple[int, int]:
    """Numerator and denominator of g_alpha(n) for alpha = m/s (not reduced)."""
    return comb(s, 2) * m * m * (n + 1) * (n + 2), s * (s * n * n + s * n + m)


def g_is_integer(s: int, m: int, n: int) -> bool:
    num, den = g_parts(s, m, n)
    return num % den == 0


def n_min(s: int, m: int) -> int:
    return max(s, (2 * m) // s + 1)


def g_floor_target(s: int, m: int) -> int:
    """floor(C(s,2) alpha^2) + 1."""
    return (comb(s, 2) * m * m) // (s * s) + 1


def _g_at_most(s: int, m: int, n: int, G: int) -> bool:
    num, den = g_parts(s, m, n)
    return num <= G * den


def n_max(s: int, m: int) -> int:
    """Least n >= n_min with g_alpha(n) <= floor(C(s,2) alpha^2) + 1, by exact bisection."""
    lo = n_min(s, m)
    G = g_floor_target(s, m)
    if _g_at_most(s, m, lo, G):
        return lo
    hi = lo + 1
    while not _g_at_most(s, m, hi, G):
        lo, hi = hi, 2 * hi
    # invariant: g(lo) > G >= g(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _g_at_most(s, m, mid, G):
            hi = mid
        else:
            lo = mid
    return hi


def v_from_n(s: int, m: int, n: int) -> Fraction:
    """v = (n^2 + n) / alpha + 2s - 1."""
    return Fraction(s * (n * n + n), m) + 2 * s - 1


def boundary(s: int, m: int, lo: int, hi: int, threshold=DEFAULT_THRESHOLD) -> int:
    """First n in [lo, hi] with g(n) - g(n+1) < threshold (hi + 1 if none).

    The consecutive difference is decreasing in n, so bisection applies.
    """
    threshold = Fraction(threshold)
    alpha = Fraction(m, s)

    def small(n: int) -> bool:
        return g_alpha(s, alpha, n) - g_alpha(s, alpha, n + 1) < threshold

    if small(lo):
        return lo
    if not small(hi):
        return hi + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if small(mid):
            hi = mid
        else:
            lo = mid
    return hi


def phase_b_roots(s: int, m: int, G: int) -> list[int]:
    """Integer n > 0 with g_alpha(n) = G exactly (quadratic in n, exact square-root test)."""
    c = comb(s, 2)
    # c m^2 (n+1)(n+2) = G s (s n^2 + s n + m)
    A = c * m * m - G * s * s
    B = 3 * c * m * m - G * s * s
    C = 2 * c * m * m - G * s * m
    if A == 0:
        if B != 0 and (-C) % B == 0 and -C // B > 0:
            return [-C // B]
        return []
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    r = isqrt(disc)
    if r * r != disc:
        return []
    out = []
    for num in {-B + r, -B - r}:
        if num % (2 * A) == 0 and num // (2 * A) > 0:
            out.append(num // (2 * A))
    return sorted(out)


def scan_exact(s: int, m: int, threshold=DEFAULT_THRESHOLD) -> list[int]:
    """Two-phase scan in exact arithmetic; returns every n with integral g_alpha(n)."""
    lo, hi = n_min(s, m), n_max(s, m)
    nb = boundary(s, m, lo, hi, threshold)
    hits = [n for n in range(lo, min(nb, hi + 1)) if g_is_integer(s, m, n)]
    if nb <= hi:
        alpha = Fraction(m, s)
        top = -(-g_alpha(s, alpha, nb).numerator // g_alpha(s, alpha, nb).denominator)
        for G in range(top, g_floor_target(s, m) - 1, -1):
            hits.extend(n for n in phase_b_roots(s, m, G) if nb <= n <= hi)
    return sorted(hits)


def scan_brute(s: int, m: int) -> list[int]:
    """Every n in [n_min, n_max] tested directly."""
    return [n for n in range(n_min(s, m), n_max(s, m) + 1) if g_is_integer(s, m, n)]


def alpha_count(s: int, beta0) -> int:
    """Number of m >= 1 with m < 4 s beta0^2."""
    bound = 4 * s * Fraction(beta0) ** 2
    return -(-bound.numerator // bound.denominator) - 1

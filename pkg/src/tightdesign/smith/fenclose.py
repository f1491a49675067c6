"""Compiled outward-rounded enclosures of ``u^e (1-u)^-f W(u)`` on a box.

Each IEEE operation rounds to nearest, so stepping one ulp outward after it keeps
the enclosure sound. Two enclosures of W are intersected: plain interval Horner,
and the centred Taylor form W(mid + h) = sum c_k h^k with |h| <= rad, which is
much tighter on small boxes when W has large cancelling coefficients.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _dn(x):
    return np.nextafter(x, -np.inf)


@njit(cache=True)
def _up(x):
    return np.nextafter(x, np.inf)


@njit(cache=True)
def _mul(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    return _dn(min(min(p1, p2), min(p3, p4))), _up(max(max(p1, p2), max(p3, p4)))


@njit(cache=True)
def _horner(wlo, whi, a, b):
    lo = 0.0
    hi = 0.0
    for k in range(wlo.shape[0] - 1, -1, -1):
        lo, hi = _mul(lo, hi, a, b)
        lo = _dn(lo + wlo[k])
        hi = _up(hi + whi[k])
    return lo, hi


@njit(cache=True)
def _taylor(wlo, whi, a, b):
    d = wlo.shape[0] - 1
    mid = 0.5 * (a + b)
    rad = _up(max(_up(mid - a), _up(b - mid)))
    clo = wlo.copy()
    chi = whi.copy()
    for i in range(d):
        for k in range(d - 1, i - 1, -1):
            plo, phi = _mul(clo[k + 1], chi[k + 1], mid, mid)
            clo[k] = _dn(clo[k] + plo)
            chi[k] = _up(chi[k] + phi)
    lo = clo[0]
    hi = chi[0]
    rk = 1.0
    for k in range(1, d + 1):
        rk = _up(rk * rad)
        if k % 2:
            mag = _up(max(abs(clo[k]), abs(chi[k])) * rk)
            lo = _dn(lo - mag)
            hi = _up(hi + mag)
        else:
            if clo[k] < 0.0:
                lo = _dn(lo + _dn(clo[k] * rk))
            if chi[k] > 0.0:
                hi = _up(hi + _up(chi[k] * rk))
    return lo, hi


@njit(cache=True)
def enclose(wlo, whi, e, f, a, b, taylor):
    """Enclosure of the u-form on [a, b] with 0 <= a <= b < 1."""
    lo, hi = _horner(wlo, whi, a, b)
    if taylor and a < b:
        tlo, thi = _taylor(wlo, whi, a, b)
        lo = max(lo, tlo)
        hi = min(hi, thi)
    if e > 0:
        plo = 1.0
        phi = 1.0
        for _ in range(e):
            plo, phi = _mul(plo, phi, a, b)
        lo, hi = _mul(lo, hi, plo, phi)
    if f > 0:
        olo = _dn(1.0 - b)
        ohi = _up(1.0 - a)
        ilo = _dn(1.0 / ohi)
        ihi = _up(1.0 / olo)
        plo = 1.0
        phi = 1.0
        for _ in range(f):
            plo, phi = _mul(plo, phi, ilo, ihi)
        lo, hi = _mul(lo, hi, plo, phi)
    return lo, hi

"""Compiled float prefilters for the two scan phases.

The kernels only nominate n values; every nomination is re-checked exactly by the
caller. Soundness rests on the tolerance: g_alpha(n) - C(s,2) alpha^2 is computed
from a few products and quotients of positive terms (no cancellation because
n > 2 alpha), so its relative error is below 16 ulp, and an integral g can never
be more than ``_tol(h)`` away from the nearest integer in float.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_U = 2.0**-52


@njit(cache=True)
def _tol(h):
    return 1e-7 + 64.0 * _U * abs(h)


@njit(cache=True)
def _h(s, c, m, n):
    """g_alpha(n) - c alpha^2 = c alpha^2 (2n - alpha + 2) / (n^2 + n + alpha), alpha = m/s."""
    fs = float(s)
    fm = float(m)
    fn = float(n)
    ca2 = c * fm * fm / (fs * fs)
    return ca2 * (2.0 * fs * fn - fm + 2.0 * fs) / (fs * fn * fn + fs * fn + fm)


@njit(cache=True)
def scan_chunk(s, ms, nmins, nbs, nmaxs):
    """Nominate (m, n) pairs whose g_alpha(n) is within tolerance of an integer.

    Phase A walks n in [nmin, nb); phase B walks integer targets G covering
    [g(nmax), g(nb)] and solves the quadratic for the matching n in [nb, nmax].
    """
    c = float(s * (s - 1) // 2)
    cap = 1024
    out_m = np.empty(cap, dtype=np.int64)
    out_n = np.empty(cap, dtype=np.int64)
    count = 0
    for idx in range(ms.shape[0]):
        m = ms[idx]
        lo = nmins[idx]
        nb = nbs[idx]
        hi = nmaxs[idx]
        fs = float(s)
        fm = float(m)
        num0 = (s * (s - 1) // 2) * m * m
        f0 = float(num0 % (s * s)) / (fs * fs)  # fractional part of c alpha^2
        for n in range(lo, min(nb, hi + 1)):
            x = f0 + _h(s, c, m, n)
            if abs(x - math.floor(x + 0.5)) < _tol(x):
                if count == cap:
                    cap *= 2
                    nm = np.empty(cap, dtype=np.int64)
                    nn = np.empty(cap, dtype=np.int64)
                    nm[:count] = out_m[:count]
                    nn[:count] = out_n[:count]
                    out_m, out_n = nm, nn
                out_m[count] = m
                out_n[count] = n
                count += 1
        if nb > hi:
            continue
        # integer part of c alpha^2 and the range of E = G - c alpha^2 to cover
        base = num0 // (s * s)
        h_top = _h(s, c, m, nb)
        h_bot = _h(s, c, m, hi)
        g_top = base + int(math.ceil(f0 + h_top + _tol(h_top))) + 1
        g_bot = base + int(math.floor(f0 + h_bot - _tol(h_bot))) - 1
        if g_bot <= base:
            g_bot = base + 1
        for G in range(g_bot, g_top + 1):
            e = G * s * s - num0  # E = e / s^2 > 0
            if e <= 0:
                continue
            fe = float(e)
            # e s n^2 + s (e - 2 c m^2) n + (e m + c m^2 (m - 2 s)) = 0, larger root
            cm2 = c * fm * fm
            A = fe * fs
            B = fs * (fe - 2.0 * cm2)
            C0 = fe * fm + cm2 * (fm - 2.0 * fs)
            disc = B * B - 4.0 * A * C0
            if disc < 0.0:
                continue
            root = (-B + math.sqrt(disc)) / (2.0 * A)
            target = fe / (fs * fs)
            for n in (int(math.floor(root)), int(math.floor(root)) + 1):
                if n < nb or n > hi:
                    continue
                h = _h(s, c, m, n)
                if abs(h - target) < _tol(h):
                    if count == cap:
                        cap *= 2
                        nm = np.empty(cap, dtype=np.int64)
                        nn = np.empty(cap, dtype=np.int64)
                        nm[:count] = out_m[:count]
                        nn[:count] = out_n[:count]
                        out_m, out_n = nm, nn
                    out_m[count] = m
                    out_n[count] = n
                    count += 1
    return out_m[:count], out_n[:count]


@njit(cache=True)
def boundaries(s, ms, nmins, nmaxs, threshold):
    """First n with g(n) - g(n+1) < threshold, per task (float; any split point is sound)."""
    c = float(s * (s - 1) // 2)
    out = np.empty(ms.shape[0], dtype=np.int64)
    for idx in range(ms.shape[0]):
        m = ms[idx]
        lo = nmins[idx]
        hi = nmaxs[idx]
        if _h(s, c, m, lo) - _h(s, c, m, lo + 1) < threshold:
            out[idx] = lo
            continue
        if _h(s, c, m, hi) - _h(s, c, m, hi + 1) >= threshold:
            out[idx] = hi + 1
            continue
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _h(s, c, m, mid) - _h(s, c, m, mid + 1) < threshold:
                hi = mid
            else:
                lo = mid
        out[idx] = hi
    return out

"""Deterministic self-checks run by ``reproduce``: small oracles and property sweeps."""

from __future__ import annotations

import json
import random
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

from .beta0 import lambda_telescoping_identity
from .design import check_candidate, residue_r
from .exactmath import UniPoly
from .search import SearchConfig, run_search, scan_brute, scan_exact
from .search.runner import run_search_until
from .smith.constants import smith_radii


def residue_suite(s_max: int = 12, count: int = 500) -> dict:
    bad = []
    for s in range(1, s_max + 1):
        for k in range(2 * s, 2 * s + count):
            n = k - s
            if residue_r(k, s) != (s * (n + 1) * n) % (2 * n + 1):
                bad.append([s, k])
    return {"cases": s_max * count, "failures": bad[:10], "ok": not bad}


def smith_suite(count: int = 500, seed: int = 0) -> dict:
    """Every zero of a perturbed product polynomial lies in some Smith disk."""
    rng = random.Random(seed)
    bad = []
    for case in range(count):
        n = rng.randint(2, 7)
        centres = rng.sample(range(-40, 41), n)
        P = UniPoly.from_roots([Fraction(c, 4) for c in centres])
        noise = [Fraction(rng.randint(-50, 50), 10**rng.randint(1, 4)) for _ in range(n)]
        P = P + UniPoly(noise)
        pts = [Fraction(c, 4) + Fraction(rng.randint(-5, 5), 1000) for c in centres]
        if len(set(pts)) < n:
            continue
        radii = [float(r.hi) for r in smith_radii(P, pts)]
        roots = np.roots([float(c) for c in reversed(P.coeffs)])
        for z in roots:
            slack = 1e-8 * (1 + abs(z))
            if not any(abs(z - float(p)) <= r + slack for p, r in zip(pts, radii)):
                bad.append(case)
                break
    return {"cases": count, "failures": bad[:10], "ok": not bad}


def telescoping_suite() -> dict:
    rows = {s: [lambda_telescoping_identity(s, i) for i in range(2, s // 2 + 1)] for s in range(4, 10)}
    return {"rows": {str(s): v for s, v in rows.items()}, "ok": all(all(v) for v in rows.values())}


def witt_oracle() -> dict:
    a = check_candidate(2, 23, 7)
    b = check_candidate(2, 23, 16)
    others = [
        [v, k]
        for v in range(5, 31)
        for k in range(4, v - 2)  # v = k + 2 is the trivial design
        if (v, k) not in {(23, 7), (23, 16)} and check_candidate(2, v, k).passed
    ]
    ok = (
        a.passed
        and a.intersection_numbers == [1, 3]
        and a.lam == 1
        and b.passed
        and b.lam == 52
        and not others
    )
    return {
        "23_7": a.as_dict(),
        "23_16": b.as_dict(),
        "other_passing": others,
        "ok": ok,
    }


def phase_equivalence(count: int = 200, seed: int = 0) -> dict:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        s = rng.randint(4, 9)
        m = rng.randint(1, 400)
        if scan_exact(s, m) != scan_brute(s, m):
            bad.append([s, m])
    return {"cases": count, "failures": bad, "ok": not bad}


def resume_suite(s: int = 5, beta0: Fraction = Fraction(6)) -> dict:
    """Interrupt a search halfway, resume it, and compare report bodies byte for byte."""
    with tempfile.TemporaryDirectory() as tmp:
        ck = str(Path(tmp) / "run.ckpt")
        fresh = run_search(SearchConfig(s, beta0, partitions=25))
        cfg = SearchConfig(s, beta0, partitions=25, checkpoint_path=ck)
        stopped = run_search_until(cfg, fresh.alphas_scanned // 2)
        resumed = run_search(cfg)
        a = json.dumps(fresh.body(), sort_keys=True)
        b = json.dumps(resumed.body(), sort_keys=True)
    return {"alphas": fresh.alphas_scanned, "interrupted": stopped, "identical": a == b, "ok": stopped and a == b}

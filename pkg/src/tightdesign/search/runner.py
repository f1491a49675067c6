"""Task partitioning, worker pool, checkpointing and the search report."""

from __future__ import annotations

import csv
import json
import logging
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..design import check_candidate
from . import exact

log = logging.getLogger(__name__)

FSYNC_EVERY = 1000
_LINE = re.compile(r"^(\d+)/(\d+) done g=(\d+) (\[.*\])$")


class CheckpointError(ValueError):
    pass


@dataclass
class SearchConfig:
    s: int
    beta0: Fraction
    derivative_threshold: Fraction = exact.DEFAULT_THRESHOLD
    partitions: int = 500  # alpha values per work unit
    checkpoint_path: str | None = None
    report_path: str | None = None
    jobs: int = 1
    stride: int = 1  # scan every stride-th alpha (sampling); 1 means all
    use_kernel: bool = True

    def __post_init__(self):
        self.beta0 = Fraction(self.beta0)
        self.derivative_threshold = Fraction(self.derivative_threshold)
        if self.beta0 <= 0 or self.derivative_threshold <= 0:
            raise ValueError("beta0 and threshold must be positive")
        if self.partitions < 1 or self.jobs < 1 or self.stride < 1:
            raise ValueError("partitions, jobs and stride must be positive")


@dataclass(frozen=True)
class AlphaTask:
    alpha: Fraction
    n_min: int
    n_max: int
    status: str = "pending"

    @classmethod
    def for_m(cls, s: int, m: int) -> "AlphaTask":
        return cls(Fraction(m, s), exact.n_min(s, m), exact.n_max(s, m))


def scan_alpha(s: int, task: AlphaTask, threshold=exact.DEFAULT_THRESHOLD) -> list[tuple[int, int]]:
    """(k, v) pairs with integral g and v for one alpha, in exact arithmetic."""
    m = task.alpha * s
    if m.denominator != 1:
        raise ValueError(f"alpha must lie in (1/{s})Z, got {task.alpha}")
    return [(k, v) for _, k, v in scan_task(s, int(m), threshold).hits]


@dataclass
class AlphaResult:
    m: int
    g_count: int
    hits: list[tuple[int, int, int]]  # (n, k, v) with integral g and v

    def line(self, s: int) -> str:
        return f"{self.m}/{s} done g={self.g_count} {json.dumps([list(h) for h in self.hits])}"


@dataclass
class SearchReport:
    s: int
    beta0: Fraction
    threshold: Fraction
    alpha_count: int
    alphas_scanned: int
    g_integral_count: int
    hits: list[dict]
    survivors: list[dict]
    seconds: float = 0.0
    stride: int = 1
    extra: dict = field(default_factory=dict)

    def body(self) -> dict:
        """Deterministic part of the report (no timing)."""
        return {
            "s": self.s,
            "beta0": str(self.beta0),
            "threshold": str(self.threshold),
            "alpha_count": self.alpha_count,
            "alphas_scanned": self.alphas_scanned,
            "stride": self.stride,
            "g_integral_count": self.g_integral_count,
            "hits": self.hits,
            "survivors": self.survivors,
        }

    def as_dict(self) -> dict:
        return {**self.body(), "seconds": round(self.seconds, 3), **self.extra}

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["alpha", "n", "k", "v", "failures"])
            for h in self.hits:
                w.writerow([h["alpha"], h["n"], h["k"], h["v"], ";".join(h["failures"])])


def scan_task(s: int, m: int, threshold=exact.DEFAULT_THRESHOLD) -> AlphaResult:
    """Exact two-phase scan of one alpha (no compiled code)."""
    ns = exact.scan_exact(s, m, threshold)
    return _result(s, m, ns)


def _result(s: int, m: int, ns) -> AlphaResult:
    hits = []
    for n in ns:
        v = exact.v_from_n(s, m, n)
        if v.denominator == 1:
            hits.append((n, n + s, int(v)))
    return AlphaResult(m, len(ns), hits)


def scan_chunk(s: int, ms: list[int], threshold=exact.DEFAULT_THRESHOLD, use_kernel: bool = True) -> list[AlphaResult]:
    """Scan a batch of alphas: compiled nomination, then exact confirmation of every nominee."""
    if not use_kernel:
        return [scan_task(s, m, threshold) for m in ms]
    from . import kernels

    arr = np.array(ms, dtype=np.int64)
    nmins = np.array([exact.n_min(s, m) for m in ms], dtype=np.int64)
    nmaxs = np.array([exact.n_max(s, m) for m in ms], dtype=np.int64)
    nbs = kernels.boundaries(s, arr, nmins, nmaxs, float(threshold))
    hm, hn = kernels.scan_chunk(s, arr, nmins, nbs, nmaxs)
    found: dict[int, set[int]] = {m: set() for m in ms}
    for m, n in zip(hm.tolist(), hn.tolist()):
        if exact.g_is_integer(s, m, n):
            found[m].add(n)
    return [_result(s, m, sorted(found[m])) for m in ms]


def read_checkpoint(path: str | Path, s: int) -> dict[int, AlphaResult]:
    done: dict[int, AlphaResult] = {}
    p = Path(path)
    if not p.exists():
        return done
    text = p.read_text()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    elif lines:
        # an unterminated final line is an interrupted write, not corruption
        log.warning("ignoring unterminated last checkpoint line")
        lines.pop()
    for no, line in enumerate(lines, 1):
        mt = _LINE.match(line)
        if not mt:
            raise CheckpointError(f"{path}:{no}: malformed checkpoint line {line!r}")
        m, ss, g = int(mt.group(1)), int(mt.group(2)), int(mt.group(3))
        if ss != s:
            raise CheckpointError(f"{path}:{no}: checkpoint is for s={ss}, not s={s}")
        try:
            hits = [tuple(int(x) for x in h) for h in json.loads(mt.group(4))]
        except (ValueError, TypeError) as err:
            raise CheckpointError(f"{path}:{no}: bad hit list ({err})") from None
        if any(len(h) != 3 for h in hits):
            raise CheckpointError(f"{path}:{no}: hit entries must be (n, k, v)")
        done[m] = AlphaResult(m, g, hits)
    return done


class _CheckpointWriter:
    def __init__(self, path: str | None):
        self.fh = open(path, "a") if path else None
        self.pending = 0

    def write(self, line: str) -> None:
        if not self.fh:
            return
        self.fh.write(line + "\n")
        self.pending += 1
        if self.pending >= FSYNC_EVERY:
            self.sync()

    def sync(self) -> None:
        if self.fh:
            self.fh.flush()
            os.fsync(self.fh.fileno())
            self.pending = 0

    def close(self) -> None:
        if self.fh:
            self.sync()
            self.fh.close()


def task_list(config: SearchConfig) -> list[int]:
    total = exact.alpha_count(config.s, config.beta0)
    return list(range(1, total + 1, config.stride))


def run_search(config: SearchConfig, stop_after: int | None = None) -> SearchReport:
    """Scan every admissible alpha (resuming from the checkpoint) and assemble the report.

    ``stop_after`` aborts after that many newly completed alphas (used to test resume).
    """
    t0 = time.perf_counter()
    s = config.s
    ms = task_list(config)
    done = read_checkpoint(config.checkpoint_path, s) if config.checkpoint_path else {}
    todo = [m for m in ms if m not in done]
    chunks = [todo[i:i + config.partitions] for i in range(0, len(todo), config.partitions)]
    log.info("s=%d: %d alphas, %d already done, %d chunks", s, len(ms), len(ms) - len(todo), len(chunks))
    writer = _CheckpointWriter(config.checkpoint_path)
    new = 0
    try:
        if config.jobs == 1:
            results = (scan_chunk(s, ch, config.derivative_threshold, config.use_kernel) for ch in chunks)
            for res in results:
                for r in res:
                    done[r.m] = r
                    writer.write(r.line(s))
                new += len(res)
                if stop_after is not None and new >= stop_after:
                    raise _Stop
        else:
            with ProcessPoolExecutor(config.jobs) as pool:
                futs = [pool.submit(scan_chunk, s, ch, config.derivative_threshold, config.use_kernel) for ch in chunks]
                for fut in as_completed(futs):
                    res = fut.result()
                    for r in res:
                        done[r.m] = r
                        writer.write(r.line(s))
                    new += len(res)
                    if stop_after is not None and new >= stop_after:
                        for f in futs:
                            f.cancel()
                        raise _Stop
    finally:
        writer.close()
    return assemble(config, ms, done, time.perf_counter() - t0)


class _Stop(Exception):
    pass


def run_search_until(config: SearchConfig, count: int) -> bool:
    """Run but stop after ``count`` alphas; True if it stopped early."""
    try:
        run_search(config, stop_after=count)
    except _Stop:
        return True
    return False


def assemble(config: SearchConfig, ms: list[int], done: dict[int, AlphaResult], seconds: float) -> SearchReport:
    s = config.s
    hits, survivors = [], []
    g_total = 0
    for m in sorted(ms):
        r = done[m]
        g_total += r.g_count
        for n, k, v in r.hits:
            verdict = check_candidate(s, v, k, stop_early=True)
            entry = {"alpha": str(Fraction(m, s)), "n": n, "k": k, "v": v, "failures": verdict.failures}
            hits.append(entry)
            if verdict.passed:
                survivors.append(verdict.as_dict())
    report = SearchReport(
        s,
        config.beta0,
        config.derivative_threshold,
        exact.alpha_count(s, config.beta0),
        len(ms),
        g_total,
        hits,
        survivors,
        seconds,
        config.stride,
    )
    if config.report_path:
        Path(config.report_path).write_text(json.dumps(report.as_dict(), indent=2) + "\n")
    return report

"""Command-line front end: one JSON report per command, plus the end-to-end ``reproduce`` driver.

Exit codes: 0 success (nothing found), 2 a mathematical survivor was found,
1 an operational error or a failed certified check.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from fractions import Fraction
from pathlib import Path

from . import __version__

log = logging.getLogger("tightdesign")

JOBS_ENV = "TIGHTDESIGN_JOBS"
TIMING_KEYS = ("seconds", "timing")
EXIT_OK, EXIT_ERROR, EXIT_SURVIVOR = 0, 1, 2
SAMPLE_ALPHAS = 2000
DESK_KMAX = 2500
EXTENDED_KMAX = 25000
CONFIG_KEYS = {"jobs", "mode", "threshold", "checkpoint_dir", "out_dir", "kmax", "sample", "log_level"}


class ConfigError(ValueError):
    pass


def read_config(path: str | None) -> dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    if not path:
        return {}
    out = {}
    for no, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{no}: expected one of {sorted(CONFIG_KEYS)} as key = value")
        out[key] = value.strip()
    return out


def default_jobs(cfg: dict) -> int:
    raw = os.environ.get(JOBS_ENV) or cfg.get("jobs") or "1"
    try:
        jobs = int(raw)
    except ValueError:
        raise ConfigError(f"job count must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise ConfigError("job count must be positive")
    return jobs


# --- reports ---------------------------------------------------------------------------------


def strip_timing(obj):
    """Copy of a report without timing fields (what determinism is judged on)."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def digest(obj) -> str:
    body = json.dumps(strip_timing(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


@dataclass
class RunManifest:
    command: list[str]
    config: dict
    constants: str  # "paper" or "certified"
    version: str = __version__
    digests: dict[str, str] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def emit(payload: dict, out: str | None, manifest: RunManifest, name: str = "report") -> dict:
    manifest.digests[name] = digest(payload)
    if "started" in manifest.timing:
        manifest.timing["elapsed"] = round(time.time() - manifest.timing["started"], 3)
    doc = {**payload, "manifest": manifest.as_dict()}
    text = json.dumps(doc, indent=2, default=str) + "\n"
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return doc


# --- shared computations -----------------------------------------------------------------------


def paper_beta0(s: int) -> Fraction:
    from .reference import BETA_STAR_FOUR, THRESHOLDS

    return BETA_STAR_FOUR if s == 4 else THRESHOLDS[s]


@lru_cache(maxsize=None)
def certified_beta0(s: int) -> tuple[Fraction, dict]:
    from .beta0 import ThresholdInputs, compute_beta0
    from .hermite import build_table
    from .smith.constants import all_constants

    tb = build_table(s)
    consts = all_constants(s, table=tb)
    rep = compute_beta0(s, ThresholdInputs.certified(s, consts, tb), tb)
    return rep.beta0, {"report": rep.as_dict(), "constants": {str(i): c.as_dict() for i, c in consts.items()}}


def search_beta0(s: int, mode: str) -> Fraction:
    """Paper mode pins the published threshold; certified mode takes the larger of the two."""
    from .reference import THRESHOLDS

    if mode == "paper":
        return paper_beta0(s)
    cert, _ = certified_beta0(s)
    if s == 4 or s in THRESHOLDS:
        return max(cert, paper_beta0(s))
    return cert


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# --- subcommands ---------------------------------------------------------------------------------


def cmd_tables(args, manifest) -> int:
    from .hermite import compare_with_table

    ss = [args.s] if args.s else list(range(1, 10))
    reports = [compare_with_table(s).as_dict() for s in ss]
    emit({"command": "tables", "tables": reports, "ok": all(r["ok"] for r in reports)}, args.out, manifest)
    return EXIT_OK if all(r["ok"] for r in reports) else EXIT_ERROR


def verify_payload(ss: list[int]) -> dict:
    from .beta0 import lambda_telescoping_identity
    from .hermite import EstimateFailure, derivative_identity_check, interlacing_check, verify_xi_estimates

    rows = []
    for s in ss:
        row = {"s": s, "derivative_identity": derivative_identity_check(s), "interlacing": interlacing_check(s)}
        if s >= 4:
            try:
                row["estimates"] = verify_xi_estimates(s)
                row["estimates_ok"] = True
            except EstimateFailure as err:
                row["estimates"] = {"failed": str(err)}
                row["estimates_ok"] = False
            row["telescoping"] = [lambda_telescoping_identity(s, i) for i in range(2, s // 2 + 1)]
        rows.append(row)
    ok = all(
        r["derivative_identity"] and r["interlacing"] and r.get("estimates_ok", True) and all(r.get("telescoping", []))
        for r in rows
    )
    return {"command": "verify", "rows": rows, "ok": ok}


def cmd_verify(args, manifest) -> int:
    payload = verify_payload([args.s] if args.s else list(range(4, 10)))
    emit(payload, args.out, manifest)
    return EXIT_OK if payload["ok"] else EXIT_ERROR


def constants_payload(s: int, mode: str) -> dict:
    from .smith.constants import validate_paper_constants

    t0 = time.perf_counter()
    if mode == "paper":
        out = validate_paper_constants(s).as_dict()
    else:
        _, extra = certified_beta0(s)
        out = {"s": s, "passed": True, "constants": extra["constants"]}
    out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


def cmd_constants(args, manifest) -> int:
    ss = [args.s] if args.s else list(range(4, 10))
    rows = [constants_payload(s, args.mode) for s in ss]
    ok = all(r["passed"] for r in rows)
    emit({"command": "constants", "mode": args.mode, "rows": rows, "ok": ok}, args.out, manifest)
    return EXIT_OK if ok else EXIT_ERROR


def beta0_payload(s: int, mode: str) -> dict:
    from .beta0 import ThresholdInputs, compute_beta0

    if mode == "paper":
        rep = compute_beta0(s, ThresholdInputs.paper(s)).as_dict()
    else:
        _, extra = certified_beta0(s)
        rep = extra["report"]
    return rep


def cmd_beta0(args, manifest) -> int:
    ss = [args.s] if args.s else list(range(4, 10))
    rows = [beta0_payload(s, args.mode) for s in ss]
    emit({"command": "beta0", "mode": args.mode, "rows": rows}, args.out, manifest)
    return EXIT_OK


def run_one_search(s: int, beta0: Fraction, jobs: int, checkpoint: str | None, threshold, stride: int = 1, report_path=None):
    from .search import SearchConfig, run_search

    cfg = SearchConfig(
        s,
        beta0,
        derivative_threshold=threshold,
        jobs=jobs,
        checkpoint_path=checkpoint,
        stride=stride,
        report_path=report_path,
    )
    return run_search(cfg)


def cmd_search(args, manifest) -> int:
    beta0 = args.beta0 if args.beta0 is not None else search_beta0(args.s, args.mode)
    rep = run_one_search(args.s, beta0, args.jobs, args.checkpoint, args.threshold, args.stride)
    if args.csv:
        rep.write_csv(args.csv)
    emit({"command": "search", **rep.as_dict()}, args.out, manifest)
    return EXIT_SURVIVOR if rep.survivors else EXIT_OK


def cmd_s4(args, manifest) -> int:
    from . import s4

    if args.action == "derive":
        f = s4.derive_f()
        terms = sorted(f.int_terms().items())
        payload = {
            "command": "s4 derive",
            "matches_stored": True,
            "monomials": len(terms),
            "degrees": list(f.degrees()),
            "terms": [[a, b, c] for (a, b), c in terms],
        }
        emit(payload, args.out, manifest)
        return EXIT_OK
    if args.action == "scan":
        rep = s4.scan_k_range(args.kmin, args.kmax, args.jobs, args.checkpoint)
        emit({"command": "s4 scan", **rep.as_dict()}, args.out, manifest)
        return EXIT_SURVIVOR if rep.solutions else EXIT_OK
    primes = [int(p) for p in args.primes.split(",") if p]
    rows = [s4.congruence_sieve(p).as_dict() for p in primes]
    emit({"command": "s4 sieve", "rows": rows}, args.out, manifest)
    return EXIT_OK


# --- reproduce -----------------------------------------------------------------------------------


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0


def _stage(results: list, number: int, name: str, fn):
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as err:  # a crashed stage is a failed criterion, not a crashed run
        log.exception("criterion %d (%s) raised", number, name)
        passed, detail = False, {"error": f"{type(err).__name__}: {err}"}
    crit = Criterion(number, name, bool(passed), detail, round(time.perf_counter() - t0, 3))
    results.append(crit)
    log.info("criterion %d %s: %s (%.1fs)", number, name, "PASS" if crit.passed else "FAIL", crit.seconds)
    return crit


def reproduce(args, manifest) -> int:
    from . import figures, s4, selfcheck
    from .beta0 import ThresholdInputs, compute_beta0
    from .hermite import compare_with_table, verify_xi_estimates
    from .reference import SIEVE_CLASSES, T_STAR_FOUR, THRESHOLDS, BETA_STAR_FOUR
    from .smith.constants import validate_paper_constants

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    figdir = Path(args.figures) if args.figures else out / "figures"
    ckdir = Path(args.checkpoint_dir) if args.checkpoint_dir else out / "checkpoints"
    ckdir.mkdir(parents=True, exist_ok=True)
    kmax = args.kmax or (EXTENDED_KMAX if args.extended else DESK_KMAX)
    results: list[Criterion] = []
    artifacts: dict[str, str] = {}
    survivors_found = False

    def save(name: str, payload: dict) -> None:
        emit(payload, str(out / name), manifest, name)
        artifacts[name] = str(out / name)

    def c1():
        tables = [compare_with_table(s).as_dict() for s in range(1, 10)]
        save("tables.json", {"command": "tables", "tables": tables})
        widths = [r["width"] for t in tables for r in t["zeros_and_D"]]
        mismatched = [t["s"] for t in tables if not t["printed_matches_recurrence"]]
        artifacts["hermite_bounds.png"] = figures.hermite_bounds(tables, figdir / "hermite_bounds.png")
        ok = all(t["ok"] for t in tables) and max(widths) <= 1e-11 and mismatched == [8]
        return ok, {"rows_ok": all(t["ok"] for t in tables), "max_width": max(widths), "printed_row_mismatch": mismatched}

    def c2():
        est = verify_xi_estimates(6)
        payload = verify_payload(list(range(4, 10)))
        save("verify.json", payload)
        return payload["ok"] and len(est) == 3, {"s6": est}

    def c3():
        verdicts = [validate_paper_constants(s).as_dict() for s in range(4, 10)]
        save("constants.json", {"command": "constants", "mode": "paper", "rows": verdicts})
        artifacts["constants_margin.png"] = figures.constants_margin(verdicts, figdir / "constants_margin.png")
        failed = [[v["s"], r["i"]] for v in verdicts for r in v["rows"] if not r["ok"]]
        divisible = all(all(v["top_coefficients_divisible_by_H_s"]) for v in verdicts)
        return divisible and not failed, {"top_coefficients_divisible": divisible, "rows_exceeding_C": failed}

    beta_rows: list[dict] = []

    def c4():
        detail = {}
        ok = True
        for s in range(4, 10):
            rep = compute_beta0(s, ThresholdInputs.paper(s))
            want = BETA_STAR_FOUR if s == 4 else THRESHOLDS[s]
            close = abs(rep.beta0 - want) <= Fraction(1, 100)
            ok = ok and close
            detail[str(s)] = {"computed": str(rep.beta0), "published": str(want), "within_0.01": close}
            if s == 4:
                contains = rep.extras.get("t_star_rounds_to_" + T_STAR_FOUR, False)
                detail["t_star_contains_" + T_STAR_FOUR] = contains
                ok = ok and contains
            cert, _ = certified_beta0(s)
            beta_rows.append({"s": s, "paper": float(rep.beta0), "certified": float(cert)})
        save("beta0.json", {"command": "beta0", "rows": detail, "certified": beta_rows})
        artifacts["thresholds.png"] = figures.thresholds(beta_rows, figdir / "thresholds.png")
        return ok, detail

    search_reports: list[dict] = []

    def c5():
        nonlocal survivors_found
        detail = {}
        ok = True
        ss = [4, 5, 6, 7, 8, 9]
        for s in ss:
            b0 = search_beta0(s, args.mode)
            from .search.exact import alpha_count

            count = alpha_count(s, b0)
            full = s in (4, 5) or args.extended
            stride = 1 if full else max(1, math.ceil(count / args.sample))
            rep = run_one_search(s, b0, args.jobs, str(ckdir / f"search-s{s}.ckpt"), args.threshold, stride)
            rep.write_csv(out / f"search-s{s}.csv")
            d = rep.as_dict()
            save(f"search-s{s}.json", {"command": "search", **d})
            search_reports.append(d)
            detail[str(s)] = {"beta0": str(b0), "alphas": count, "scanned": rep.alphas_scanned, "stride": stride, "hits": len(rep.hits), "survivors": len(rep.survivors)}
            if rep.survivors:
                survivors_found = True
                ok = False
        eq = selfcheck.phase_equivalence(200)
        detail["phase_equivalence"] = eq
        artifacts["search_hits.png"] = figures.search_hits(search_reports, figdir / "search_hits.png")
        return ok and eq["ok"], detail

    def c6():
        res = selfcheck.witt_oracle()
        save("witt.json", res)
        return res["ok"], {"other_passing": res["other_passing"]}

    def c7():
        nonlocal survivors_found
        s4.derive_f()  # raises on any mismatch with the stored polynomial
        sieve = {}
        sieve_ok = True
        for p, (ks, vs) in SIEVE_CLASSES.items():
            got = s4.congruence_sieve(p)
            match = set(got.k_classes) == ks and set(got.v_classes) == vs
            sieve_ok = sieve_ok and match
            sieve[str(p)] = {**got.as_dict(), "matches_published": match}
        table17 = s4.reduce_mod(s4.f_literal(), 17)
        artifacts["sieve_p17.png"] = figures.sieve_table(17, table17, figdir / "sieve_p17.png")
        scan = s4.scan_k_range(9, kmax, args.jobs, str(ckdir / f"s4-scan-{kmax}.ckpt"))
        if scan.solutions:
            survivors_found = True
        save("s4.json", {"command": "s4", "derive_matches_stored": True, "sieve": sieve, "scan": scan.as_dict()})
        return sieve_ok and not scan.solutions, {"derive": True, "sieve_matches": sieve_ok, "kmax": kmax, "solutions": [list(x) for x in scan.solutions]}

    def c8():
        suites = {
            "residue": selfcheck.residue_suite(),
            "smith_containment": selfcheck.smith_suite(),
            "telescoping": selfcheck.telescoping_suite(),
            "checkpoint_resume": selfcheck.resume_suite(),
        }
        save("properties.json", suites)
        return all(v["ok"] for v in suites.values()), {k: v["ok"] for k, v in suites.items()}

    stages = [
        (1, "hermite tables", c1),
        (2, "zero-spacing estimates", c2),
        (3, "published constants", c3),
        (4, "thresholds", c4),
        (5, "small-beta search", c5),
        (6, "witt oracle", c6),
        (7, "s=4 suite", c7),
        (8, "property suites", c8),
    ]
    for number, name, fn in stages:
        _stage(results, number, name, fn)
    summary = {
        "command": "reproduce",
        "mode": args.mode,
        "extended": args.extended,
        "matrix": [asdict(c) for c in results],
        "failed": [c.number for c in results if not c.passed],
        "artifacts": artifacts,
    }
    emit(summary, str(out / "summary.json"), manifest, "summary.json")
    for c in results:
        print(f"criterion {c.number} ({c.name}): {'PASS' if c.passed else 'FAIL'}")
    if survivors_found:
        print("a survivor was found; see the search and s4 reports", file=sys.stderr)
        return EXIT_SURVIVOR
    failed = [c for c in results if not c.passed]
    if failed:
        names = ", ".join(f"{c.number} ({c.name})" for c in failed)
        print(f"failed criteria: {names}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tightdesign", description="Nonexistence checks for tight 2s-designs.")
    p.add_argument("--config", help="key = value file with defaults (jobs, mode, threshold, ...)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, mode=True):
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        if mode:
            sp.add_argument("--mode", choices=("paper", "certified"), default=None)
        return sp

    sp = common(sub.add_parser("tables", help="Hermite polynomials, zeros and D_i bounds"), mode=False)
    sp.add_argument("--s", type=int)
    sp = common(sub.add_parser("verify", help="zero-spacing estimates and exact identities"), mode=False)
    sp.add_argument("--s", type=int)
    sp = common(sub.add_parser("constants", help="validate or derive the (B, C_i) constants"))
    sp.add_argument("--s", type=int)
    sp = common(sub.add_parser("beta0", help="thresholds beta_0(s)"))
    sp.add_argument("--s", type=int)
    sp = common(sub.add_parser("search", help="exhaustive small-beta search for one s"))
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--beta0", type=_fraction)
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--checkpoint")
    sp.add_argument("--threshold", type=_fraction)
    sp.add_argument("--stride", type=int, default=1, help="scan every N-th alpha only")
    sp.add_argument("--csv", help="also write the hit list as CSV")

    s4p = sub.add_parser("s4", help="the s = 4 polynomial f(k, v)")
    s4sub = s4p.add_subparsers(dest="action", required=True)
    common(s4sub.add_parser("derive"), mode=False)
    sp = common(s4sub.add_parser("scan"), mode=False)
    sp.add_argument("--kmin", type=int, default=9)
    sp.add_argument("--kmax", type=int, default=DESK_KMAX)
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--checkpoint")
    sp = common(s4sub.add_parser("sieve"), mode=False)
    sp.add_argument("--primes", default="7,11,13,17")

    sp = sub.add_parser("reproduce", help="run every check and write reports, CSVs and figures")
    sp.add_argument("--extended", action="store_true", help="full s=6..9 searches and k <= 25000")
    sp.add_argument("--mode", choices=("paper", "certified"), default=None)
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--out-dir", default=None)
    sp.add_argument("--figures", help="figure directory (default OUT_DIR/figures)")
    sp.add_argument("--checkpoint-dir")
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--sample", type=int, help=f"alphas per sampled search (default {SAMPLE_ALPHAS})")
    sp.add_argument("--threshold", type=_fraction)
    return p


def _apply_defaults(args, cfg: dict) -> None:
    if getattr(args, "mode", "unset") is None:
        args.mode = cfg.get("mode", "paper")
        if args.mode not in ("paper", "certified"):
            raise ConfigError(f"mode must be paper or certified, got {args.mode!r}")
    if hasattr(args, "jobs") and args.jobs is None:
        args.jobs = default_jobs(cfg)
    if hasattr(args, "threshold") and args.threshold is None:
        args.threshold = Fraction(cfg.get("threshold", "1/2"))
    if args.command == "reproduce":
        args.out_dir = args.out_dir or cfg.get("out_dir", "reproduce-out")
        args.checkpoint_dir = args.checkpoint_dir or cfg.get("checkpoint_dir")
        args.kmax = args.kmax or (int(cfg["kmax"]) if "kmax" in cfg else None)
        args.sample = args.sample or int(cfg.get("sample", SAMPLE_ALPHAS))


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        cfg = read_config(args.config)
        level = cfg.get("log_level", "DEBUG" if args.verbose else "INFO")
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        _apply_defaults(args, cfg)
        snapshot = {k: str(v) for k, v in vars(args).items() if k not in ("config", "verbose")}
        manifest = RunManifest(["tightdesign", *argv], snapshot, getattr(args, "mode", None) or "paper")
        handlers = {
            "tables": cmd_tables,
            "verify": cmd_verify,
            "constants": cmd_constants,
            "beta0": cmd_beta0,
            "search": cmd_search,
            "s4": cmd_s4,
            "reproduce": reproduce,
        }
        manifest.timing["started"] = time.time()
        code = handlers[args.command](args, manifest)
    except (ConfigError, OSError, ValueError, ArithmeticError, AssertionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    log.debug("done in %.1fs", time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())

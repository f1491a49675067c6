"""Static figures for the reproduce report (Agg backend, PNG files)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

DPI = 120


def _save(fig, path: Path) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return str(path)


def constants_margin(verdicts: list[dict], path: Path) -> str:
    """Certified sum_j M_j B^-j over the published C_i for every (s, i); 1 is the pass line."""
    labels, ratios, colors = [], [], []
    for v in verdicts:
        for row in v["rows"]:
            labels.append(f"{v['s']},{row['i']}")
            r = row["sum_certified_float"] / float(row["C_paper"])
            ratios.append(r)
            colors.append("tab:blue" if row["ok"] else "tab:red")
    fig, ax = plt.subplots(figsize=(9, 3.5))
    ax.bar(range(len(ratios)), ratios, color=colors)
    ax.axhline(1.0, color="black", lw=0.8)
    lo = min(ratios + [1.0])
    ax.set_ylim(max(0.0, lo - 0.05), max(ratios + [1.0]) + 0.01)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=90, fontsize=8)
    ax.set_xlabel("(s, i)")
    ax.set_ylabel("certified sum / C_i")
    return _save(fig, path)


def thresholds(rows: list[dict], path: Path) -> str:
    """Published and certified beta_0 per s."""
    ss = [r["s"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    w = 0.38
    ax.bar([s - w / 2 for s in ss], [r["paper"] for r in rows], w, label="published constants")
    ax.bar([s + w / 2 for s in ss], [r["certified"] for r in rows], w, label="certified constants")
    ax.set_xticks(ss)
    ax.set_xlabel("s")
    ax.set_ylabel("beta_0")
    ax.legend(frameon=False)
    return _save(fig, path)


def search_hits(reports: list[dict], path: Path) -> str:
    """Every (alpha, n) with integral g and v, per s; all of them fail a later check."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for rep in reports:
        hits = rep["hits"]
        if not hits:
            continue
        xs = [float(eval_fraction(h["alpha"])) for h in hits]
        ys = [h["n"] for h in hits]
        ax.scatter(xs, ys, s=6, label=f"s={rep['s']} ({len(hits)})")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("alpha")
    ax.set_ylabel("n = k - s")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)


def eval_fraction(text: str) -> float:
    num, _, den = text.partition("/")
    return int(num) / int(den or 1)


def hermite_bounds(tables: list[dict], path: Path) -> str:
    """Certified D_i lower bounds against the zero xi_i, per s."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for tb in tables:
        rows = tb["zeros_and_D"]
        xs = [(float(r["xi_lo"]) + float(r["xi_hi"])) / 2 for r in rows]
        ys = [float(r["D_lower"]) for r in rows]
        ax.plot(xs, ys, "o-", ms=3, label=f"s={tb['s']}")
    ax.set_yscale("log")
    ax.set_xlabel("xi_i")
    ax.set_ylabel("|H_{s-1}(xi_i)| lower bound")
    ax.legend(frameon=False, fontsize=8, ncol=2)
    return _save(fig, path)


def sieve_table(p: int, table: list[list[int]], path: Path) -> str:
    """Zeros of f(k, v) mod p; empty rows and columns are the excluded classes."""
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    grid = [[1 if table[a][b] == 0 else 0 for b in range(p)] for a in range(p)]
    ax.imshow(grid, cmap="Greys", origin="lower")
    ax.set_xlabel(f"v mod {p}")
    ax.set_ylabel(f"k mod {p}")
    ax.set_xticks(range(p))
    ax.set_yticks(range(p))
    ax.tick_params(labelsize=7)
    return _save(fig, path)

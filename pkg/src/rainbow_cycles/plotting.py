"""Figures for the CLI reports.  Everything renders off-screen to a file."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

FIG_WIDTH = 6.0
FSIZE = 9

plt.rc("font", size=FSIZE)
plt.rc("axes", titlesize=FSIZE, labelsize=FSIZE, linewidth=0.6)
plt.rc("legend", fontsize=FSIZE - 1, frameon=False)


def new_figure(width: float = FIG_WIDTH, height: float | None = None, ncols: int = 1):
    golden = (math.sqrt(5) - 1.0) / 2.0
    if height is None:
        height = width * golden / max(ncols, 1) * 1.2
    fig, axes = plt.subplots(1, ncols, figsize=(width, height), squeeze=False)
    return fig, axes[0]


def save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_hypercube_bound(rows, path: str | Path) -> Path:
    """Edge counts of the colored d-cubes against (n/2) log2 n and a tree."""
    fig, (ax,) = new_figure()
    ns = [r.n for r in rows]
    ax.plot(ns, [r.edges for r in rows], "o", label="d-cube edges (rainbow-acyclic)")
    grid = [2 ** (j / 8) for j in range(8, 8 * int(math.log2(max(ns))) + 1)] if max(ns) > 2 else ns
    ax.plot(grid, [x / 2 * math.log2(x) for x in grid], "-", lw=0.8, label="(n/2) log2 n")
    ax.plot(grid, [x - 1 for x in grid], "--", lw=0.8, label="n - 1 (tree)")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("edges")
    ax.legend()
    return save(fig, path)


def plot_growth(traces, path: str | Path) -> Path:
    """Level sizes and exponents per level, one line per run."""
    fig, (ax_size, ax_alpha) = new_figure(ncols=2)
    for t in traces:
        built = t.built
        levels = list(range(len(built)))
        style = "o-" if t.outcome == "cycle" else "x--"
        ax_size.plot(levels, [r.size for r in built], style, lw=0.7, ms=3)
        ax_alpha.plot(levels, t.alphas, style, lw=0.7, ms=3)
    for ax in (ax_size, ax_alpha):
        ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax_size.set_yscale("log", base=2)
    ax_size.set_xlabel("level")
    ax_size.set_ylabel("|L_i|")
    ax_alpha.set_xlabel("level")
    ax_alpha.set_ylabel("alpha_i = log |L_i| / log n")
    ax_size.set_title("o: run found a cycle, x: none", loc="left")
    return save(fig, path)


def plot_sweep(report_rows, path: str | Path) -> Path:
    """Per modulus, how many sets were B_k* and how many had a witness.

    ``report_rows`` are ``(modulus, bk_star_count, witness_count)``.
    """
    fig, (ax,) = new_figure()
    mods = [r[0] for r in report_rows]
    star = [r[1] for r in report_rows]
    wit = [r[2] for r in report_rows]
    ax.bar(mods, star, label="B_k* (no rainbow C_2k)")
    ax.bar(mods, wit, bottom=star, label="witness (rainbow C_2k)")
    ax.set_xlabel("modulus")
    ax.set_ylabel("(A, k) cases")
    ax.legend()
    return save(fig, path)

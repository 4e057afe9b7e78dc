"""Figures for the CLI report path, rendered off-screen with matplotlib."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .arith import rational_bounds  # noqa: E402
from .cauchy import Real  # noqa: E402


def bracket_series(real: Real, n_max: int):
    """``(n, lower, upper)`` for every precision ``0..n_max``."""
    return [(n, b.lower, b.upper) for n in range(n_max + 1) for b in [rational_bounds(real, n)]]


def plot_bounds(real: Real, n_max: int, path, title: str = "") -> Path:
    """Bracket convergence: the nested-looking intervals and their log2 widths."""
    series = bracket_series(real, n_max)
    ns = [n for n, _, _ in series]
    centre = (series[-1][1] + series[-1][2]) / 2
    lows = [float(lo - centre) for _, lo, _ in series]
    highs = [float(hi - centre) for _, _, hi in series]
    widths = [math.log2(hi - lo) for _, lo, hi in series]

    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    left.fill_between(ns, lows, highs, step="mid", alpha=0.3)
    left.plot(ns, lows, "v-", ns, highs, "^-", markersize=3)
    left.set_xlabel("n")
    left.set_ylabel(f"bound − {float(centre):.6g}")
    left.set_title("rational bracket")
    right.plot(ns, widths, "o-", markersize=3, label="log2(upper − lower)")
    right.plot(ns, [-n for n in ns], "--", label="−n")
    right.set_xlabel("n")
    right.legend()
    right.set_title("bracket width")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path

"""Static line charts for scan outputs.

Figures are written as SVG through the SVG backend with fixed metadata and hash salt,
so identical data produce byte-identical files.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
FIG_WIDTH = 4.5  # inches

STYLE = {
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.0,
    "lines.markersize": 3,
    "axes.prop_cycle": matplotlib.cycler(color=["#08589e", "#d95f0e", "#31a354", "#756bb1", "#636363"]),
    "figure.figsize": (FIG_WIDTH, FIG_WIDTH * GOLDEN),
    "svg.hashsalt": "cartanflow",
    "svg.fonttype": "none",
}


def _save(fig, path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return path


def plot_lie_trotter(ts, errors, path, floor: float = 1e-300) -> Path:
    """Log-log plot of the Lie-Trotter error against ``t``, with a slope-2 guide."""
    ts = np.asarray(ts, dtype=float)
    errors = np.maximum(np.asarray(errors, dtype=float), floor)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.loglog(ts, errors, "o-", label="error")
        if len(ts) and errors[0] > floor:
            ax.loglog(ts, errors[0] * (ts / ts[0]) ** 2, ":", color="0.5", label=r"$\propto t^2$")
        ax.set_xlabel(r"$t$")
        ax.set_ylabel(r"$d(G(\mu^t)^{1/t},\ \exp\int\log A\,d\mu)$")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_norm_scan(ts, forward, limit, path) -> Path:
    """Ky Fan ``k`` norms of ``G(mu^t)^{1/t}`` against ``t`` (log axis), with their limits dashed."""
    ts = np.asarray(ts, dtype=float)
    forward = np.atleast_2d(np.asarray(forward, dtype=float))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for k in range(forward.shape[1]):
            line, = ax.semilogx(ts, forward[:, k], "o-", label=f"$k={k + 1}$")
            ax.axhline(limit[k], ls="--", color=line.get_color(), lw=0.7)
        ax.set_xlabel(r"$t$")
        ax.set_ylabel("Ky Fan norm")
        ax.legend(frameon=False, ncol=2)
        return _save(fig, path)


def plot_trajectory(ts, columns: dict, path, ylabel: str = "") -> Path:
    """One line per named column against ``t``."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for name, values in columns.items():
            ax.plot(ts, values, "o-", label=name)
        ax.set_xlabel(r"$t$")
        ax.set_ylabel(ylabel)
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_suite(names, measured, bounds, passed, path) -> Path:
    """Horizontal bars of ``log10(measured / bound)`` per check; bars right of zero exceed their bound.

    Checks whose measured value is a signed slack (nonpositive when satisfied)
    are drawn at the left edge.
    """
    measured = np.asarray(measured, dtype=float)
    bounds = np.asarray(bounds, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(measured > 0, np.log10(measured / bounds), np.nan)
    left = np.nanmin(ratio) - 1.0 if np.any(np.isfinite(ratio)) else -1.0
    ratio = np.where(np.isfinite(ratio), ratio, left)
    colors = ["#31a354" if ok else "#de2d26" for ok in passed]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(FIG_WIDTH, 0.22 * len(names) + 0.8))
        y = np.arange(len(names))[::-1]
        ax.barh(y, ratio - left, left=left, color=colors, height=0.6)
        ax.axvline(0.0, color="0.3", lw=0.7)
        ax.set_yticks(y)
        ax.set_yticklabels(names)
        ax.set_xlabel(r"$\log_{10}$(measured / bound)")
        return _save(fig, path)

"""Figure rendering for the report paths of the command line.

All figures go straight to files (Agg backend, no display).
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .spectrum import WalshSpectrum  # noqa: E402

__all__ = ["spectrum_figure", "sweep_figure"]

_OMEGA_RE, _OMEGA_IM = -0.5, math.sqrt(3.0) / 2.0


def spectrum_figure(path, spec: WalshSpectrum, title: str = "") -> None:
    """Two panels: |S_f(b)|^2 against b with the flat bent level marked,
    and the coefficients as points in the complex plane with the circle
    of radius 3^(n/2)."""
    ctx = spec.ctx
    norms = spec.norms()
    re = spec.u + _OMEGA_RE * spec.v
    im = _OMEGA_IM * spec.v

    fig, (ax1, ax2) = plt.subplots(
        1, 2, figsize=(11, 4.5), gridspec_kw={"width_ratios": [3, 2]})
    b = np.arange(ctx.q)
    ax1.scatter(b, norms, s=4, color="#1f4e79", alpha=0.7, linewidths=0)
    ax1.axhline(ctx.q, color="#c0392b", lw=1, ls="--",
                label=f"flat level 3^{ctx.n} = {ctx.q}")
    ax1.set_xlabel("b (packed index)")
    ax1.set_ylabel("|S_f(b)|^2")
    ax1.set_ylim(bottom=0)
    ax1.legend(loc="lower right", fontsize=8)
    ax1.set_title("squared spectrum")

    r = math.sqrt(ctx.q)
    theta = np.linspace(0, 2 * math.pi, 256)
    ax2.plot(r * np.cos(theta), r * np.sin(theta),
             color="#c0392b", lw=0.8, ls="--")
    ax2.scatter(re, im, s=10, color="#1f4e79", alpha=0.6, linewidths=0)
    ax2.set_aspect("equal")
    ax2.set_xlabel("Re")
    ax2.set_ylabel("Im")
    ax2.set_title("coefficients in C")

    fig.suptitle(title or f"Walsh spectrum, n={ctx.n}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def sweep_figure(path, rows, n: int) -> None:
    """Summary of a coefficient sweep: counts by regularity class and by
    algebraic degree.  rows are (a1, sign, bent, regularity, degree, hash)
    string tuples as written to the results file."""
    reg_counts: dict = {}
    deg_counts: dict = {}
    for row in rows:
        reg_counts[row[3]] = reg_counts.get(row[3], 0) + 1
        deg_counts[str(row[4])] = deg_counts.get(str(row[4]), 0) + 1

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    for ax, counts, label in ((ax1, reg_counts, "regularity"),
                              (ax2, deg_counts, "algebraic degree")):
        keys = sorted(counts)
        ax.bar(range(len(keys)), [counts[k] for k in keys],
               color="#1f4e79")
        ax.set_xticks(range(len(keys)))
        ax.set_xticklabels(keys)
        ax.set_xlabel(label)
        ax.set_ylabel("count")
        for i, k in enumerate(keys):
            ax.text(i, counts[k], str(counts[k]),
                    ha="center", va="bottom", fontsize=8)
    fig.suptitle(f"coefficient sweep, n={n} ({len(rows)} rows)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)

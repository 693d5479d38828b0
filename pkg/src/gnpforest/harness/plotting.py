"""Figures rendered next to the CSV reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..moments import expected_Xk_log  # noqa: E402
from ..rational import fraction_to_str  # noqa: E402
from .experiment import ConcentrationReport  # noqa: E402


def plot_concentration(report: ConcentrationReport, path) -> Path:
    """Bar chart of solved F values over the shaded window ``[k_minus, k_plus]``."""
    w = report.window
    hist = report.histogram
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.axvspan(w.k_minus - 0.5, w.k_plus + 0.5, color="tab:green", alpha=0.15,
               label=f"window [{w.k_minus}, {w.k_plus}]")
    if hist:
        xs = list(hist)
        colors = ["tab:green" if w.contains(x) else "tab:red" for x in xs]
        ax.bar(xs, [hist[x] for x in xs], color=colors, width=0.8)
    lo = min([w.k_minus, *hist]) - 1
    hi = max([w.k_plus, *hist]) + 1
    ax.set_xlim(lo - 0.5, hi + 0.5)
    ax.set_xticks(range(lo, hi + 1))
    rate = report.hit_rate
    shown = "n/a" if rate is None else f"{float(rate):.2f}"
    ax.set_title(f"n={w.n}, p={fraction_to_str(w.p)}, eps={fraction_to_str(w.eps)}: "
                 f"hit rate {shown}, incomplete {report.incomplete}")
    ax.set_xlabel("maximum induced forest size")
    ax.set_ylabel("samples")
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    ax.legend(frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_expectation_curve(n: int, p, path, k_range=None) -> Path:
    """``ln E[X_k]`` against ``k``; its zero crossing sits near the window."""
    ks = list(k_range or range(1, n + 1))
    ys = [expected_Xk_log(n, k, p) for k in ks]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(ks, ys, marker=".", color="tab:blue")
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("k")
    ax.set_ylabel("ln E[X_k]")
    ax.set_title(f"n={n}, p={p}")
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

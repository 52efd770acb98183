"""Optional figure rendering for sweep output (needs matplotlib)."""
from __future__ import annotations

import math
import os

import numpy as np


def _pyplot():
    try:
        import matplotlib
    except ImportError as exc:  # pragma: no cover - depends on install
        raise ImportError("plotting needs matplotlib; install the 'plot' extra") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def figure_path(csv_path):
    root, _ = os.path.splitext(str(csv_path))
    return root + ".png"


def plot_rows(rows, scenario, path):
    """Render a sweep to ``path`` (PNG) and return the path."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    if scenario == "werner":
        x = np.array([r.x for r in rows])
        ax.plot(x, [r.ppt_min_eig for r in rows], label="min PT eigenvalue")
        ax.plot(x, [r.chsh_max / 2 - 1 for r in rows], label="CHSH/2 - 1")
        ax.axhline(0, color="k", lw=0.5)
        ax.axvline(1 / 3, ls=":", color="grey")
        ax.axvline(1 / math.sqrt(2), ls=":", color="grey")
        ax.set_xlabel("x")
        ax.legend()
    elif scenario == "accelerated":
        by_omega = {}
        for r in rows:
            by_omega.setdefault(r.omega, []).append(r)
        for om, rs in sorted(by_omega.items()):
            L = np.array([r.L for r in rs])
            ax.plot(L, [0.5 * math.log(r.ratio12) for r in rs], "o", label=f"Omega={om:g}")
            grid = np.linspace(L.min(), L.max(), 50)
            ax.plot(grid, math.pi * om * grid / 2, "-", lw=0.8)
        ax.set_xlabel("L")
        ax.set_ylabel("ln(|X|/E)")
        ax.legend()
    else:
        key = "L" if scenario == "figure2" else "omega"
        xs = np.array([getattr(r, key) for r in rows])
        ys = np.sqrt(np.array([r.ratio12 for r in rows]))
        ax.plot(xs, ys)
        ax.axhline(1, color="k", lw=0.5)
        ax.set_xlabel("L" if key == "L" else "Omega")
        ax.set_ylabel("|X| / E^2")
        ax.set_yscale("log")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

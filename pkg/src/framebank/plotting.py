"""Figure rendering for the report path (matplotlib, file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["plot_convergence", "plot_dual_decay"]


def plot_convergence(rows, path, title="Finite-section convergence"):
    """Semilog plot of the measured error per channel against the bound."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    channels = sorted({r.channel for r in rows})
    for m in channels:
        sub = sorted((r for r in rows if r.channel == m), key=lambda r: r.N)
        ax.semilogy([r.N for r in sub],
                    [max(r.measured_err, 1e-300) for r in sub],
                    marker="o", ms=3, lw=1, label="channel {}".format(m))
    sub = sorted({(r.N, r.bound) for r in rows})
    ax.semilogy([n for n, _ in sub], [b for _, b in sub],
                "k--", lw=1.2, label="a-priori bound")
    ax.set_xlabel("section half-width N")
    ax.set_ylabel("l2 error")
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_dual_decay(duals, path, title="Dual generator decay"):
    """Magnitude of each dual on a log scale against the index."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for m, d in enumerate(duals):
        if d.is_zero:
            continue
        ks = np.arange(d.offset, d.offset + len(d.values))
        ax.semilogy(ks, np.maximum(np.abs(d.values), 1e-300),
                    lw=1, label="channel {}".format(m))
    ax.set_xlabel("k")
    ax.set_ylabel("|gamma(k)|")
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path

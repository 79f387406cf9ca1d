"""Figure rendering for the CLI report paths.

All functions write a file and return; nothing is shown interactively.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["save_lag_profile_figure", "save_alignment_figure", "save_distance_heatmap"]


def save_lag_profile_figure(path, true_lags, profiles):
    """Estimated lag profiles of each model against the true schedule."""
    fig, ax = plt.subplots(figsize=(9, 4.5))
    t = np.arange(len(true_lags))
    ax.step(t, true_lags, where="post", color="black", lw=1.8, label="true lag")
    for name, prof in profiles.items():
        ax.plot(t, prof, lw=1.0, alpha=0.85, label=name)
    ax.set_xlabel("t")
    ax.set_ylabel("lag")
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_alignment_figure(path, x, y, lag_profile):
    """The two series and the lag profile of the chosen alignment path."""
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(9, 6), sharex=True)
    t = np.arange(len(x))
    ax0.plot(t, x.values, lw=1.0, label=x.label or "x")
    ax0.plot(t, y.values, lw=1.0, label=y.label or "y")
    ax0.set_ylabel("normalized value")
    ax0.legend(fontsize=8)
    ax1.plot(np.arange(len(lag_profile)), lag_profile, lw=1.2, color="tab:red")
    ax1.axhline(0.0, color="black", lw=0.6)
    ax1.set_xlabel("t")
    ax1.set_ylabel("lag")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_distance_heatmap(path, labels, d):
    """Heatmap of the pairwise distance matrix."""
    n = len(labels)
    fig, ax = plt.subplots(figsize=(0.32 * n + 2.2, 0.32 * n + 1.8))
    im = ax.imshow(d, cmap="viridis")
    ax.set_xticks(range(n), labels, rotation=90, fontsize=7)
    ax.set_yticks(range(n), labels, fontsize=7)
    fig.colorbar(im, ax=ax, shrink=0.85, label="distance")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

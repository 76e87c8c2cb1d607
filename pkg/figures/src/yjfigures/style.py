"""Deterministic matplotlib setup shared by every figure script."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

FIG_DPI = 150
# ordered, color-blind-friendly cycle; index = agent order in the file
PALETTE = ["#0173b2", "#de8f05", "#029e73", "#d55e00", "#cc78bc", "#56b4e9"]

_RC = {
    "figure.dpi": FIG_DPI,
    "savefig.dpi": FIG_DPI,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.fontsize": 8,
    "svg.hashsalt": "yjfigures",
}


def new_figure(ncols=1, nrows=1, width=4.2, height=3.2):
    plt.rcdefaults()
    matplotlib.rcParams.update(_RC)
    fig, axes = plt.subplots(nrows, ncols, figsize=(width * ncols, height * nrows),
                             squeeze=False)
    return fig, axes


def save(fig, path) -> None:
    """Write the figure with no timestamp metadata: reruns are byte-identical."""
    fig.savefig(path, format="png", metadata={"Software": "yjfigures"},
                bbox_inches="tight")
    plt.close(fig)

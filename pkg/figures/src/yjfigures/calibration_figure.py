"""Calibration illustration: threshold curves inside the safe-payoff band.

Reads the same curves CSV and shades [mu - c*sigma^2, mu + c*sigma^2]; at a
well-calibrated (mu, c) the extreme agents' curves stay inside the band and
touch it near zero wealth.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .io import SchemaError, load_columns
from .style import PALETTE, new_figure, save

SCHEMA = ("wealth", "eta", "lambda_T")


def build_figure(data, mu, c, sigma, title=None):
    lo = mu - c * sigma**2
    hi = mu + c * sigma**2
    fig, axes = new_figure(width=4.8)
    ax = axes[0][0]
    wealth_span = (data["wealth"].min(), data["wealth"].max())
    ax.axhspan(lo, hi, color="#90c987", alpha=0.45, label="safe payoff range")
    etas = sorted(set(data["eta"].tolist()))
    for i, eta in enumerate(etas):
        mask = data["eta"] == eta
        order = np.argsort(data["wealth"][mask])
        ax.plot(data["wealth"][mask][order], data["lambda_T"][mask][order],
                color=PALETTE[i % len(PALETTE)], label=f"eta = {eta:g}")
    ax.axhline(mu, color="0.3", linewidth=0.9, linestyle=":",
               label=f"mu = {mu:g}")
    ax.set_xlim(*wealth_span)
    ax.set_xlabel("wealth")
    ax.set_ylabel("indifference safe payoff")
    ax.set_title(title or f"calibrated band: mu={mu:g}, c={c:g}, sigma={sigma:g}")
    ax.legend()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Overlay threshold curves on the calibrated safe-payoff band")
    parser.add_argument("--input", required=True)
    parser.add_argument("--output", required=True)
    parser.add_argument("--mu", type=float, required=True)
    parser.add_argument("--c", type=float, required=True)
    parser.add_argument("--sigma", type=float, default=2.0)
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        data = load_columns(args.input, SCHEMA)
    except (FileNotFoundError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    save(build_figure(data, args.mu, args.c, args.sigma, args.title), args.output)
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

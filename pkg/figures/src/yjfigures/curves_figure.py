"""Indifference-threshold curves from a curves CSV (wealth, eta, lambda_T).

One line per agent over the wealth grid; an optional horizontal reference
marks the risky mean the curves converge toward.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .io import SchemaError, load_columns
from .style import PALETTE, new_figure, save

SCHEMA = ("wealth", "eta", "lambda_T")


def build_figure(data, mu=None, title=None):
    fig, axes = new_figure()
    ax = axes[0][0]
    etas = sorted(set(data["eta"].tolist()))
    for i, eta in enumerate(etas):
        mask = data["eta"] == eta
        order = np.argsort(data["wealth"][mask])
        ax.plot(data["wealth"][mask][order], data["lambda_T"][mask][order],
                color=PALETTE[i % len(PALETTE)], label=f"eta = {eta:g}")
    if mu is not None:
        ax.axhline(mu, color="0.3", linewidth=0.9, linestyle=":", label="risky mean")
    ax.set_xlabel("wealth")
    ax.set_ylabel("indifference safe payoff")
    if title:
        ax.set_title(title)
    ax.legend()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Plot indifference-threshold curves from a curves CSV")
    parser.add_argument("--input", required=True)
    parser.add_argument("--output", required=True)
    parser.add_argument("--mu", type=float, default=None,
                        help="draw the risky-mean reference line")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        data = load_columns(args.input, SCHEMA)
    except (FileNotFoundError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    save(build_figure(data, args.mu, args.title), args.output)
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

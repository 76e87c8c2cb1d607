"""Empirical wealth-CDF panels from simulate's cdf CSVs (run_id, eta, wealth).

One panel per input file; files follow the CLI naming scheme
``cdf_gamma{G}_t{T}.csv`` from which the panel's dynamics value and
snapshot time are read.  The growth-rate maximizing agent (eta equal to
the panel's gamma) is drawn dashed.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from .io import SchemaError, load_columns
from .style import PALETTE, new_figure, save

SCHEMA = ("run_id", "eta", "wealth")
_NAME_RE = re.compile(r"cdf_gamma(?P<gamma>[0-9.]+)_t(?P<t>\d+)\.csv$")


def parse_cell_from_name(path) -> tuple:
    m = _NAME_RE.search(Path(path).name)
    if not m:
        raise SchemaError(
            f"{path}: cannot read (gamma, t) from file name; expected "
            "cdf_gamma<G>_t<T>.csv (pass --gammas/--times to override)"
        )
    return float(m.group("gamma")), int(m.group("t"))


def build_figure(panels, dashed="auto"):
    """``panels``: list of (gamma, t, column dict) triples."""
    fig, axes = new_figure(ncols=len(panels), width=3.6)
    for ax, (gamma, t, data) in zip(axes[0], panels):
        etas = sorted(set(data["eta"].tolist()))
        for i, eta in enumerate(etas):
            wealth = np.sort(data["wealth"][data["eta"] == eta])
            ecdf = np.arange(1, wealth.size + 1) / wealth.size
            is_maximizer = (eta == gamma) if dashed == "auto" else (eta == dashed)
            ax.step(wealth, ecdf, where="post",
                    color=PALETTE[i % len(PALETTE)],
                    linestyle="--" if is_maximizer else "-",
                    linewidth=1.4 if is_maximizer else 1.0,
                    label=f"eta = {eta:g}")
        ax.set_title(f"gamma = {gamma:g}, t = {t}")
        ax.set_xlabel("wealth")
        ax.set_ylim(0.0, 1.0)
    axes[0][0].set_ylabel("empirical CDF")
    axes[0][-1].legend(loc="lower right")
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Plot per-agent wealth CDF panels from simulate outputs")
    parser.add_argument("--input", required=True, nargs="+",
                        help="one cdf_gamma<G>_t<T>.csv per panel")
    parser.add_argument("--output", required=True)
    parser.add_argument("--gammas", type=float, nargs="+", default=None,
                        help="override the per-file gamma parsed from names")
    parser.add_argument("--times", type=int, nargs="+", default=None)
    parser.add_argument("--dashed-eta", default="auto",
                        help="'auto' dashes eta == gamma; or a number")
    args = parser.parse_args(argv)

    dashed = "auto" if args.dashed_eta == "auto" else float(args.dashed_eta)
    try:
        panels = []
        for i, path in enumerate(args.input):
            if args.gammas is not None and args.times is not None:
                cell = (args.gammas[i], args.times[i])
            else:
                cell = parse_cell_from_name(path)
            data = load_columns(path, SCHEMA)
            panels.append((cell[0], cell[1], data))
    except (FileNotFoundError, SchemaError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    save(build_figure(panels, dashed), args.output)
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

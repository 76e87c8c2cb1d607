"""Transform-family comparison from a transform table (x, family, param, value).

Shows why the all-reals family is used for wealth dynamics: the classic
power-utility curves stop at zero wealth while their shifted counterparts
continue smoothly through it.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .io import SchemaError, load_columns
from .style import PALETTE, new_figure, save

SCHEMA = ("x", "family", "param", "value")
_STYLES = {"yeo_johnson": "-", "isoelastic": "--"}


def build_figure(data, title=None):
    fig, axes = new_figure(width=4.6)
    ax = axes[0][0]
    params = sorted(set(data["param"].tolist()))
    for i, p in enumerate(params):
        for family, style in _STYLES.items():
            mask = (data["param"] == p) & (data["family"] == family)
            if not np.any(mask):
                continue
            order = np.argsort(data["x"][mask])
            label = f"{family} ({p:g})" if family == "yeo_johnson" else None
            ax.plot(data["x"][mask][order], data["value"][mask][order],
                    linestyle=style, color=PALETTE[i % len(PALETTE)], label=label)
    ax.set_xlabel("wealth")
    ax.set_ylabel("transformed wealth")
    ax.set_title(title or "shifted power transform (solid) vs isoelastic (dashed)")
    ax.legend()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Plot the transform-family comparison")
    parser.add_argument("--input", required=True)
    parser.add_argument("--output", required=True)
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        data = load_columns(args.input, SCHEMA, numeric=("x", "param", "value"))
    except (FileNotFoundError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    save(build_figure(data, args.title), args.output)
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: ``calibrate`` (print the fixed-point parameters), ``curves``
(indifference-threshold CSV), ``simulate`` (ensemble CDF CSVs plus a
manifest), ``infer`` (estimate an agent's risk parameter from a decision
log).  Floats are serialized with 17 significant digits so every output
round-trips exactly; identical invocations with the same seed produce
byte-identical files regardless of ``--threads``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .agent import Choice
from .calibration import CalibrationError, calibrate
from .convergence import lambda_T_curve
from .dynamics import GambleEnv
from .simulation import (
    DecisionRecord,
    ExperimentConfig,
    infer_eta,
    run_decision_logs,
    run_ensemble,
)
from .transform import isoelastic, yj_forward

MANIFEST_SCHEMA = "yjgambles.manifest.v1"
OUTPUT_DIR_ENV = "YJGAMBLES_OUTPUT_DIR"


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _num(x) -> str:
    # compact float for file names: 0.25 -> "0.25", 1.0 -> "1"
    return format(float(x), "g")


def _parse_floats(text: str):
    return tuple(float(v) for v in text.split(",") if v.strip() != "")


def _parse_ints(text: str):
    return tuple(int(v) for v in text.split(",") if v.strip() != "")


def _out_dir(args) -> Path:
    base = args.output_dir or os.environ.get(OUTPUT_DIR_ENV) or "."
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _read_config_file(path: str) -> dict:
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {raw!r} is not 'key = value'")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    return values


# ---------------------------------------------------------------- calibrate

def _cmd_calibrate(args) -> int:
    res = calibrate(args.gamma, args.eta_low, args.eta_high, args.sigma,
                    c0=args.c0, tol=args.tol)
    print(f"mu = {_fmt(res.mu)}")
    print(f"c = {_fmt(res.c)}")
    print(f"iterations = {res.iterations}")
    print(f"converged = {str(res.converged).lower()}")
    print(f"lambda_p = {_fmt(res.lambda_p)}")
    print(f"lambda_q = {_fmt(res.lambda_q)}")
    return 0 if res.converged else 1


# ------------------------------------------------------------------- curves

def _wealth_grid(args):
    if args.spacing == "geometric":
        if args.wealth_min <= 0:
            raise ValueError("geometric spacing requires a positive wealth range")
        return np.geomspace(args.wealth_min, args.wealth_max, args.points)
    return np.linspace(args.wealth_min, args.wealth_max, args.points)


def _cmd_curves(args) -> int:
    if (args.mu is None) != (args.c is None):
        raise ValueError("--mu and --c must be given together")
    etas = args.etas
    if args.mu is None:
        res = calibrate(args.gamma, min(etas), max(etas), args.sigma)
        if not res.converged:
            print("calibration did not converge", file=sys.stderr)
            return 1
        mu, c = res.mu, res.c
    else:
        mu, c = args.mu, args.c
    env = GambleEnv(gamma=args.gamma, mu=mu, sigma=args.sigma, c=c)
    grid = _wealth_grid(args)

    out = Path(args.output) if args.output else _out_dir(args) / "curves.csv"
    lines = ["wealth,eta,lambda_T"]
    for eta in etas:
        curve = lambda_T_curve(grid, eta, env)
        for w, lam in zip(curve.wealth_grid, curve.lambda_values):
            lines.append(f"{_fmt(w)},{_fmt(eta)},{_fmt(lam)}")
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out} (gamma={_num(args.gamma)}, mu={_fmt(mu)}, c={_fmt(c)})")

    if args.transform_table:
        _write_transform_table(Path(args.transform_table), args.transform_params)
        print(f"wrote {args.transform_table}")
    return 0


def _write_transform_table(path: Path, params) -> None:
    xs = np.linspace(-5.0, 5.0, 401)
    lines = ["x,family,param,value"]
    for p in params:
        for x in xs:
            lines.append(f"{_fmt(x)},yeo_johnson,{_fmt(p)},{_fmt(yj_forward(x, p))}")
        for x in xs[xs > 0]:
            lines.append(f"{_fmt(x)},isoelastic,{_fmt(p)},{_fmt(isoelastic(x, p))}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


# ----------------------------------------------------------------- simulate

_CONFIG_KEYS = {
    "gammas": ("gamma_list", _parse_floats),
    "etas": ("eta_list", _parse_floats),
    "sigma": ("sigma", float),
    "runs": ("runs", int),
    "horizon": ("horizon", int),
    "snapshots": ("snapshots", _parse_ints),
    "master_seed": ("master_seed", int),
    "initial_wealth": ("initial_wealth", float),
    "share_risky": ("share_risky", lambda v: v.lower() in ("1", "true", "yes")),
    "quad_nodes": ("quad_nodes", int),
}


def _build_config(args) -> ExperimentConfig:
    kwargs = {}
    if args.config:
        for key, raw in _read_config_file(args.config).items():
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            field, conv = _CONFIG_KEYS[key]
            kwargs[field] = conv(raw)
    overrides = {
        "gamma_list": args.gammas,
        "eta_list": args.etas,
        "sigma": args.sigma,
        "runs": args.runs,
        "horizon": args.horizon,
        "snapshots": args.snapshots,
        "master_seed": args.seed,
        "initial_wealth": args.initial_wealth,
        "quad_nodes": args.quad_nodes,
    }
    for field, value in overrides.items():
        if value is not None:
            kwargs[field] = value
    if args.no_share_risky:
        kwargs["share_risky"] = False
    if args.mu is not None or args.c is not None:
        if args.mu is None or args.c is None:
            raise ValueError("--mu and --c must be given together")
        kwargs["calibration_override"] = (args.mu, args.c)
    # Clamp default snapshots into a short horizon so small smoke runs work
    # without spelling out --snapshots.
    horizon = kwargs.get("horizon", ExperimentConfig.horizon)
    if "snapshots" not in kwargs:
        snaps = tuple(t for t in ExperimentConfig.snapshots if t <= horizon)
        kwargs["snapshots"] = snaps or (horizon,)
    return ExperimentConfig(**kwargs)


def _write_cdf_csv(path: Path, result, gamma: float, snapshot: int) -> None:
    lines = ["run_id,eta,wealth"]
    for eta in result.config.eta_list:
        wealth = result.wealth_by_run[(gamma, eta, snapshot)]
        eta_txt = _fmt(eta)
        for run_id, w in enumerate(wealth):
            lines.append(f"{run_id},{eta_txt},{_fmt(w)}")
    path.write_text("\n".join(lines) + "\n")


def _write_manifest(path: Path, result, files, decision_files) -> None:
    cfg = result.config
    lines = [
        f"schema = {MANIFEST_SCHEMA}",
        f"version = {__version__}",
        f"master_seed = {cfg.master_seed}",
        f"sigma = {_fmt(cfg.sigma)}",
        f"runs = {cfg.runs}",
        f"horizon = {cfg.horizon}",
        "snapshots = " + ",".join(str(t) for t in cfg.snapshots),
        "gammas = " + ",".join(_fmt(g) for g in cfg.gamma_list),
        "etas = " + ",".join(_fmt(e) for e in cfg.eta_list),
        f"initial_wealth = {_fmt(cfg.initial_wealth)}",
        f"share_risky = {str(cfg.share_risky).lower()}",
        f"quad_nodes = {cfg.quad_nodes}",
        f"calibration_override = {str(cfg.calibration_override is not None).lower()}",
    ]
    for g in cfg.gamma_list:
        mu, c = result.calibrations[g]
        lines.append(f"calibration_gamma_{_num(g)} = mu={_fmt(mu)},c={_fmt(c)}")
    for f in files:
        lines.append(f"cdf_file = {f.name}")
    for f in decision_files:
        lines.append(f"decision_file = {f.name}")
    path.write_text("\n".join(lines) + "\n")


def _write_decision_log_csv(path: Path, records) -> None:
    lines = ["t,wealth_before,lambda,choice"]
    for rec in records:
        lines.append(
            f"{rec.t},{_fmt(rec.wealth_before)},{_fmt(rec.lam)},{rec.choice.value}"
        )
    path.write_text("\n".join(lines) + "\n")


def _cmd_simulate(args) -> int:
    config = _build_config(args)
    out_dir = _out_dir(args)
    result = run_ensemble(config, threads=args.threads)

    files = []
    for gamma in config.gamma_list:
        for snap in config.snapshots:
            path = out_dir / f"cdf_gamma{_num(gamma)}_t{snap}.csv"
            _write_cdf_csv(path, result, gamma, snap)
            files.append(path)

    decision_files = []
    if args.decision_log_runs > 0:
        for gamma in config.gamma_list:
            env = result.env(gamma)
            for eta in config.eta_list:
                logs = run_decision_logs(
                    eta, env, config.horizon, args.decision_log_runs,
                    config.master_seed, config.initial_wealth, config.quad_nodes,
                )
                for run_id, records in enumerate(logs):
                    path = out_dir / (
                        f"decisions_gamma{_num(gamma)}_eta{_num(eta)}_run{run_id}.csv"
                    )
                    _write_decision_log_csv(path, records)
                    decision_files.append(path)

    manifest = out_dir / "manifest.txt"
    _write_manifest(manifest, result, files, decision_files)
    print(f"wrote {len(files)} cdf files + manifest to {out_dir}")
    return 0


# -------------------------------------------------------------------- infer

def _read_decision_log(path: str):
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].strip() != "t,wealth_before,lambda,choice":
        raise ValueError(
            f"{path}: expected decision-log header 't,wealth_before,lambda,choice'"
        )
    records = []
    for line in lines[1:]:
        if not line.strip():
            continue
        t, wealth, lam, choice = line.split(",")
        records.append(DecisionRecord(
            t=int(t),
            wealth_before=float(wealth),
            lam=float(lam),
            choice=Choice(choice.strip()),
            payoff_applied=float("nan"),
        ))
    return records


def _cmd_infer(args) -> int:
    records = _read_decision_log(args.log)
    env = GambleEnv(gamma=args.gamma, mu=args.mu, sigma=args.sigma, c=args.c)
    est = infer_eta(records, env, args.eta_grid)
    print(f"eta_hat = {_fmt(est.eta_hat)}")
    print(f"mismatches = {int(est.mismatch_counts.min())}")
    print(f"ambiguous = {str(est.ambiguous).lower()}")
    print("counts = " + ",".join(
        f"{_fmt(e)}:{int(n)}" for e, n in zip(est.eta_grid, est.mismatch_counts)
    ))
    return 0


# --------------------------------------------------------------------- main

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yjgambles",
        description="Repeated-gamble experiments under Yeo-Johnson wealth dynamics",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="solve for the zero-growth informative (mu, c)")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--eta-low", type=float, default=0.0)
    p.add_argument("--eta-high", type=float, default=1.0)
    p.add_argument("--c0", type=float, default=0.1)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("curves", help="write indifference-threshold curves as CSV")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--etas", type=_parse_floats, default=(0.0, 1.0))
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--wealth-min", type=float, default=0.0)
    p.add_argument("--wealth-max", type=float, default=1000.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--spacing", choices=("linear", "geometric"), default="linear")
    p.add_argument("--output", default=None)
    p.add_argument("--output-dir", default=None)
    p.add_argument("--transform-table", default=None,
                   help="also write a transform-comparison CSV (x,family,param,value)")
    p.add_argument("--transform-params", type=_parse_floats, default=(0.0, 0.5, 1.0))
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("simulate", help="run the ensemble and write CDF CSVs + manifest")
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--gammas", type=_parse_floats, default=None)
    p.add_argument("--etas", type=_parse_floats, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--snapshots", type=_parse_ints, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--initial-wealth", type=float, default=None)
    p.add_argument("--quad-nodes", type=int, default=None)
    p.add_argument("--mu", type=float, default=None, help="override calibrated mu")
    p.add_argument("--c", type=float, default=None, help="override calibrated c")
    p.add_argument("--no-share-risky", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--decision-log-runs", type=int, default=0)
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("infer", help="estimate eta from a decision-log CSV")
    p.add_argument("--log", required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--eta-grid", type=_parse_floats, default=(0.0, 0.25, 0.5, 0.75, 1.0))
    p.set_defaults(func=_cmd_infer)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, CalibrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, FloatingPointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

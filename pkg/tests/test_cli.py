import hashlib
from pathlib import Path

import numpy as np
import pytest

from yjgambles.calibration import calibrate
from yjgambles.cli import main
from yjgambles.dynamics import GambleEnv
from yjgambles.calibration import indifference_lambda


def run_cli(args):
    return main(args)


def file_hash(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


# ------------------------------------------------------------------ calibrate

def test_calibrate_prints_reference_values(capsys):
    assert run_cli(["calibrate", "--gamma", "0.5", "--sigma", "2",
                    "--eta-low", "0", "--eta-high", "1"]) == 0
    out = capsys.readouterr().out
    values = dict(line.split(" = ") for line in out.strip().splitlines())
    assert float(values["mu"]) == pytest.approx(-0.166, abs=0.005)
    assert float(values["c"]) == pytest.approx(0.166, abs=0.005)
    assert values["converged"] == "true"


def test_calibrate_rejects_out_of_range_gamma(capsys):
    assert run_cli(["calibrate", "--gamma", "1.5"]) != 0
    assert "error" in capsys.readouterr().err


# --------------------------------------------------------------------- curves

def test_curves_writes_schema_and_values(tmp_path, capsys):
    out = tmp_path / "curves.csv"
    assert run_cli(["curves", "--gamma", "0.5", "--sigma", "2",
                    "--etas", "0,1", "--mu", "-0.166", "--c", "0.166",
                    "--wealth-min", "0", "--wealth-max", "100",
                    "--points", "5", "--output", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "wealth,eta,lambda_T"
    assert len(lines) == 1 + 2 * 5
    w, eta, lam = lines[1].split(",")
    env = GambleEnv(gamma=0.5, mu=-0.166, sigma=2.0, c=0.166)
    expect = float(indifference_lambda(float(w), float(eta), env))
    assert float(lam) == pytest.approx(expect, abs=1e-12)


def test_curves_transform_table(tmp_path):
    out = tmp_path / "curves.csv"
    table = tmp_path / "transforms.csv"
    assert run_cli(["curves", "--gamma", "0.5", "--mu", "-0.166", "--c", "0.166",
                    "--points", "3", "--wealth-min", "0", "--wealth-max", "10",
                    "--output", str(out), "--transform-table", str(table)]) == 0
    lines = table.read_text().strip().splitlines()
    assert lines[0] == "x,family,param,value"
    families = {line.split(",")[1] for line in lines[1:]}
    assert families == {"yeo_johnson", "isoelastic"}


def test_curves_requires_matching_overrides(capsys):
    assert run_cli(["curves", "--gamma", "0.5", "--mu", "-0.1"]) == 2


# ------------------------------------------------------------------- simulate

def simulate_args(out_dir, threads=1, seed=9001):
    return ["simulate", "--gammas", "0,1", "--etas", "0,0.5,1",
            "--runs", "10", "--horizon", "5", "--seed", str(seed),
            "--threads", str(threads), "--output-dir", str(out_dir)]


def test_simulate_smoke_files_and_rows(tmp_path):
    assert run_cli(simulate_args(tmp_path)) == 0
    files = sorted(p.name for p in tmp_path.glob("cdf_*.csv"))
    assert files == ["cdf_gamma0_t5.csv", "cdf_gamma1_t5.csv"]
    lines = (tmp_path / "cdf_gamma0_t5.csv").read_text().strip().splitlines()
    assert lines[0] == "run_id,eta,wealth"
    assert len(lines) == 1 + 3 * 10  # 3 agents x 10 runs
    per_eta = [line.split(",")[1] for line in lines[1:]]
    assert per_eta.count("0.5") == 10
    manifest = (tmp_path / "manifest.txt").read_text()
    assert "schema = yjgambles.manifest.v1" in manifest
    assert "master_seed = 9001" in manifest
    assert "calibration_gamma_1 = " in manifest


def test_simulate_deterministic_across_threads(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    assert run_cli(simulate_args(d1, threads=1)) == 0
    assert run_cli(simulate_args(d2, threads=3)) == 0
    for f1 in sorted(d1.glob("*")):
        f2 = d2 / f1.name
        assert file_hash(f1) == file_hash(f2), f1.name


def test_simulate_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        "# smoke experiment\n"
        "gammas = 0,0.5\n"
        "etas = 0,1\n"
        "runs = 5\n"
        "horizon = 4\n"
        "snapshots = 4\n"
        "master_seed = 3\n"
    )
    out = tmp_path / "out"
    assert run_cli(["simulate", "--config", str(cfg), "--runs", "7",
                    "--output-dir", str(out)]) == 0
    manifest = (out / "manifest.txt").read_text()
    assert "runs = 7" in manifest  # flag wins over config
    lines = (out / "cdf_gamma0_t4.csv").read_text().strip().splitlines()
    assert len(lines) == 1 + 2 * 7


def test_simulate_rejects_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("runz = 5\n")
    assert run_cli(["simulate", "--config", str(cfg)]) == 2


def test_simulate_env_var_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("YJGAMBLES_OUTPUT_DIR", str(tmp_path / "envout"))
    assert run_cli(["simulate", "--gammas", "0", "--etas", "0",
                    "--runs", "3", "--horizon", "2", "--seed", "1"]) == 0
    assert (tmp_path / "envout" / "manifest.txt").exists()


# ---------------------------------------------------------------------- infer

def test_infer_roundtrip_via_decision_log(tmp_path, capsys):
    out = tmp_path
    res = calibrate(0.5, 0.0, 1.0, 2.0)
    assert run_cli(["simulate", "--gammas", "0.5", "--etas", "0,0.5,1",
                    "--runs", "2", "--horizon", "120", "--snapshots", "120",
                    "--seed", "5", "--decision-log-runs", "1",
                    "--output-dir", str(out)]) == 0
    capsys.readouterr()
    log = out / "decisions_gamma0.5_eta0.5_run0.csv"
    assert log.exists()
    assert run_cli(["infer", "--log", str(log), "--gamma", "0.5",
                    "--mu", repr(res.mu), "--c", repr(res.c),
                    "--sigma", "2"]) == 0
    printed = capsys.readouterr().out
    values = dict(line.split(" = ") for line in printed.strip().splitlines())
    assert float(values["eta_hat"]) == 0.5
    assert int(values["mismatches"]) == 0


def test_infer_rejects_malformed_log(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("time,w,l,c\n0,0,0,safe\n")
    assert run_cli(["infer", "--log", str(bad), "--gamma", "0.5",
                    "--mu", "-0.16", "--c", "0.16"]) == 2


def test_missing_log_file_fails(tmp_path):
    assert run_cli(["infer", "--log", str(tmp_path / "nope.csv"),
                    "--gamma", "0.5", "--mu", "-0.16", "--c", "0.16"]) != 0

#!/usr/bin/env python3
"""Command-line surface: argument handling, exit codes and output files."""

import csv
import logging
import math
import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from cli import EXIT_ABORTS, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, main
from cli.app import build_run_config
from cli.verify import (
    born_suite,
    equivariance_suite,
    hamilton_jacobi_suite,
    locality_suite,
    quadrature_suite,
    schedule_suite,
    unitarity_suite,
)
from models import IntegrationScheme, ModelKind, OracleId
from utils import parse_level


def header(path: Path):
    with open(path, newline="") as f:
        return next(csv.reader(f))


def test_unknown_oracle_is_usage_error():
    assert main(["deutsch", "--oracle", "f9"]) == EXIT_USAGE


def test_missing_oracle_is_usage_error(tmp_path):
    assert main(["deutsch", "--output-dir", str(tmp_path)]) == EXIT_USAGE


def test_invalid_numbers_are_usage_errors(tmp_path):
    assert main(["deutsch", "--oracle", "f0", "--dt", "-1", "--output-dir", str(tmp_path)]) == EXIT_USAGE
    assert main(["ensemble", "--experiment", "born", "--p0", "1.5", "--output-dir", str(tmp_path)]) \
        == EXIT_USAGE
    assert main(["ensemble", "--experiment", "born", "--model", "well",
                 "--output-dir", str(tmp_path)]) == EXIT_USAGE


def test_nested_config_file_rejected(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("spin:\n  dt: 0.01\n")
    assert main(["deutsch", "--oracle", "f0", "--config", str(config)]) == EXIT_USAGE


def test_config_layers(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("n: 42\nseed: 3\nscheme: RK4\n")
    args = build_parser().parse_args(["deutsch", "--oracle", "f1", "--config", str(config),
                                      "--seed", "5", "--output-dir", str(tmp_path)])
    run = build_run_config(args)
    assert run.n == 42
    assert run.seed == 5
    assert run.scheme is IntegrationScheme.RK4
    assert run.oracle is OracleId.F1
    assert run.model is ModelKind.SPIN
    assert run.dt == pytest.approx(0.001)
    assert run.measurement_time == pytest.approx(0.5)
    assert run.output_dir == tmp_path


def test_well_defaults_come_from_their_section(tmp_path):
    args = build_parser().parse_args(["deutsch", "--model", "well", "--oracle", "f2",
                                      "--output-dir", str(tmp_path)])
    run = build_run_config(args)
    assert run.mass == pytest.approx(10.0)
    assert run.dt == pytest.approx(0.01)
    assert run.measurement_time == pytest.approx(10 * 0.05 / (3 * math.pi ** 2), rel=1e-12)


def test_spin_deutsch_run(tmp_path):
    code = main(["deutsch", "--model", "spin", "--oracle", "f3", "--n", "200",
                 "--output-dir", str(tmp_path)])
    assert code == EXIT_OK
    out = tmp_path / "deutsch_spin_f3"
    assert header(out / "pointer.csv") == ["t", "y"]
    assert header(out / "ensemble.csv") == ["sample_id", "x0", "y0", "x_final", "y_final",
                                            "status", "outcome"]
    verdict = (out / "verdict.txt").read_text()
    assert "verdict: constant" in verdict
    assert "ensemble_correct_fraction: 1.000000" in verdict
    assert list((tmp_path / "logs").glob("deutsch_*.log"))


def test_spin_deutsch_plots(tmp_path):
    code = main(["deutsch", "--oracle", "f1", "--n", "100", "--emit-plots",
                 "--output-dir", str(tmp_path)])
    assert code == EXIT_OK
    out = tmp_path / "deutsch_spin_f1"
    assert (out / "pointer.svg").exists()
    assert (out / "ensemble_final.svg").exists()


def test_born_ensemble(tmp_path):
    code = main(["ensemble", "--experiment", "born", "--p0", "0.3", "--n", "2000",
                 "--output-dir", str(tmp_path)])
    assert code == EXIT_OK
    report = tmp_path / "ensemble_born_spin" / "report.csv"
    with open(report, newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 2000
    assert {row["outcome"] for row in rows} == {"0", "1"}
    assert "Frequency 1" in report.with_suffix(".txt").read_text()


def test_spin_deutsch_ensemble_from_uniform_start(tmp_path):
    code = main(["ensemble", "--experiment", "deutsch", "--oracle", "f2", "--density", "uniform",
                 "--n", "200", "--output-dir", str(tmp_path)])
    assert code == EXIT_OK


def test_oracle_trajectory_family(tmp_path):
    code = main(["trajectories", "--mode", "oracle", "--output-dir", str(tmp_path)])
    assert code == EXIT_OK
    out = tmp_path / "trajectories"
    assert header(out / "trajectories_oracle.csv") == ["traj_id", "t", "x", "y"]
    assert not (out / "trajectories_free.csv").exists()
    with open(out / "density_plus.csv", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["x", "rho"]
    assert len(rows) == 513


def test_verify_suites():
    assert unitarity_suite().passed
    assert schedule_suite().passed
    assert locality_suite(1, count=20).passed
    assert hamilton_jacobi_suite(1, count=3).passed


def test_ensemble_suites():
    equivariance = equivariance_suite(1)
    assert equivariance.passed, equivariance.detail
    assert "(diagnostic)" in equivariance.detail
    born = born_suite(1)
    assert born.passed, born.detail


def test_verify_command_passes_on_defaults(tmp_path):
    assert main(["verify", "--output-dir", str(tmp_path)]) == EXIT_OK


def test_tampered_oracle_constant_fails_quadrature():
    assert quadrature_suite().passed
    tampered = quadrature_suite(tamper_a=0.01)
    assert not tampered.passed
    assert tampered.name == "quadrature"


def test_log_levels():
    assert parse_level("debug") == logging.DEBUG
    assert parse_level(" Warning ") == logging.WARNING
    assert parse_level("chatty") == logging.INFO


def test_verify_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_ABORTS}) == 4


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

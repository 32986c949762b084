#!/usr/bin/env python3
"""Ensemble sampling, distribution statistics, equivariance and Born-rule frequencies."""

import csv
import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from ensemble import (
    born_frequencies,
    deutsch_correct_fraction,
    equivariance_check,
    grid_cdf,
    ks_critical_value,
    ks_statistic,
    relative_entropy,
    sample_density,
    spin_deutsch_ensemble,
    spin_measurement_model,
    well_deutsch_ensemble,
    well_schedule_model,
    write_ensemble_report,
)
from models import (
    EnsembleResult,
    EnsembleSpec,
    EnvelopeViolationError,
    InvalidInputError,
    OracleId,
    OverlappingPacketsError,
    TrajectoryStatus,
    WellWaveFunction,
)
from spin_model import SpinPilotWave
from well_model import density, oracle_matched_mass, oracle_schedule
from well_model.basis import density_bound

S = 1.0 / math.sqrt(2.0)


def sin_squared(x):
    return 2.0 * np.sin(np.pi * np.asarray(x)) ** 2


def uniform(x):
    return np.ones_like(np.asarray(x, dtype=float))


# Sampling

def test_uniform_self_test():
    n = 20_000
    samples = sample_density(EnsembleSpec(size=n, seed=1), uniform, [(0.0, 1.0)], 1.0)
    assert samples.shape == (n,)
    assert ks_statistic(samples, lambda x: np.clip(x, 0.0, 1.0)) < ks_critical_value(n)


def test_sampling_follows_density():
    n = 20_000
    samples = sample_density(EnsembleSpec(size=n, seed=4), sin_squared, [(0.0, 1.0)], 2.0)
    cdf = lambda x: x - np.sin(2 * np.pi * x) / (2 * np.pi)
    assert ks_statistic(samples, cdf) < 0.02
    assert relative_entropy(samples, sin_squared, 64, [(0.0, 1.0)]) < 0.01


def test_sampling_is_deterministic_per_seed():
    spec = EnsembleSpec(size=5000, seed=9)
    first = sample_density(spec, sin_squared, [(0.0, 1.0)], 2.0)
    again = sample_density(spec, sin_squared, [(0.0, 1.0)], 2.0)
    other = sample_density(EnsembleSpec(size=5000, seed=10), sin_squared, [(0.0, 1.0)], 2.0)
    np.testing.assert_array_equal(first, again)
    assert not np.array_equal(first, other)


def test_sampling_two_coordinates():
    w = WellWaveFunction.from_product([S, S], [S, -S])
    samples = sample_density(EnsembleSpec(size=300, seed=2), lambda x, y: density(w.coeffs, x, y),
                             [(0.0, 1.0), (0.0, 1.0)], density_bound(w.coeffs))
    assert samples.shape == (300, 2)
    assert np.all((samples > 0.0) & (samples < 1.0))


def test_envelope_violation():
    with pytest.raises(EnvelopeViolationError):
        sample_density(EnsembleSpec(size=100), uniform, [(0.0, 1.0)], 0.5)


def test_invalid_densities():
    with pytest.raises(InvalidInputError):
        sample_density(EnsembleSpec(size=10), lambda x: -uniform(x), [(0.0, 1.0)], 1.0)
    with pytest.raises(InvalidInputError):
        sample_density(EnsembleSpec(size=10, initial_density=uniform), uniform, [(0.0, 1.0)], 1.0)
    with pytest.raises(InvalidInputError):
        sample_density(EnsembleSpec(size=10), uniform, [(1.0, 0.0)], 1.0)


def test_custom_initial_density():
    spec = EnsembleSpec(size=2000, seed=3, initial_density=uniform, density_bound=1.0)
    samples = sample_density(spec, sin_squared, [(0.0, 1.0)], 2.0)
    assert ks_statistic(samples, lambda x: np.clip(x, 0.0, 1.0)) < 0.05


# Statistics

def test_grid_cdf():
    cdf = grid_cdf(sin_squared, 0.0, 1.0)
    assert float(cdf(0.5)) == pytest.approx(0.5, abs=1e-9)
    assert float(cdf(-1.0)) == 0.0 and float(cdf(2.0)) == 1.0
    with pytest.raises(InvalidInputError):
        grid_cdf(lambda x: 0.0 * x, 0.0, 1.0)


def test_ks_statistic():
    quantiles = (np.arange(1000) + 0.5) / 1000
    assert ks_statistic(quantiles, lambda x: np.clip(x, 0.0, 1.0)) == pytest.approx(0.0005)
    assert ks_critical_value(10_000) == pytest.approx(0.0163)
    with pytest.raises(InvalidInputError):
        ks_statistic(np.array([]), lambda x: x)


def test_relative_entropy_edges():
    point_mass = np.full(1000, 0.5)
    assert relative_entropy(point_mass, sin_squared, 64, [(0.0, 1.0)]) > 2.0
    left_empty = lambda x: np.where(np.asarray(x) > 0.5, 1.0, 0.0)
    assert relative_entropy(np.full(10, 0.25), left_empty, 16, [(0.0, 1.0)]) == math.inf
    rng = np.random.default_rng(0)
    assert relative_entropy(rng.uniform(size=5000), sin_squared, 32, [(0.0, 1.0)]) >= 0.0
    with pytest.raises(InvalidInputError):
        relative_entropy(np.array([]), sin_squared)


# Transport

def test_spin_equivariance():
    state = SpinPilotWave.prepare(data=(S, S))
    result = equivariance_check(EnsembleSpec(size=4000, seed=3),
                                spin_measurement_model(state, 0.5, 1e-3))
    assert result.reliable
    assert result.ks_initial < 0.05
    assert result.ks_statistic < 0.05
    assert result.histogram is not None and len(result.bin_edges) == 65


def test_well_equivariance_at_matched_mass():
    n = 10_000
    w0 = WellWaveFunction(0.5 * np.array([1.0, -1.0, 1.0, -1.0]), oracle_matched_mass())
    result = equivariance_check(EnsembleSpec(size=n, seed=5),
                                well_schedule_model(w0, oracle_schedule(OracleId.F2), 0.01))
    assert result.size == n
    assert result.reliable
    assert result.ks_initial < 0.05
    assert result.ks_statistic < 0.05


def test_born_frequencies():
    n = 10_000
    state = SpinPilotWave.prepare(data=(math.sqrt(0.3), math.sqrt(0.7)))
    result = born_frequencies(EnsembleSpec(size=n, seed=11), state, 0.5, 1e-3)
    assert result.expected_frequencies == pytest.approx({"0": 0.3, "1": 0.7})
    sigma = math.sqrt(0.3 * 0.7 / n)
    assert abs(result.frequencies["0"] - 0.3) < 3 * sigma
    assert result.frequencies["0"] + result.frequencies["1"] == pytest.approx(1.0)


def test_born_frequencies_definite_state():
    state = SpinPilotWave.prepare(data=(1.0, 0.0))
    result = born_frequencies(EnsembleSpec(size=500, seed=1), state, 0.5, 1e-3)
    assert result.frequencies == {"0": 1.0, "1": 0.0}


def test_born_needs_separated_packets():
    state = SpinPilotWave.prepare(data=(S, S))
    with pytest.raises(OverlappingPacketsError):
        born_frequencies(EnsembleSpec(size=100), state, 0.05, 1e-3)


@pytest.mark.parametrize("f", list(OracleId))
def test_spin_deutsch_ensemble(f):
    result = spin_deutsch_ensemble(EnsembleSpec(size=500, seed=7), f)
    assert result.reliable
    assert deutsch_correct_fraction(result, f) == 1.0


def test_spin_deutsch_ensemble_deterministic():
    first = spin_deutsch_ensemble(EnsembleSpec(size=200, seed=8), OracleId.F1)
    again = spin_deutsch_ensemble(EnsembleSpec(size=200, seed=8), OracleId.F1)
    np.testing.assert_array_equal(first.final_positions, again.final_positions)


@pytest.mark.parametrize("f", [OracleId.F0, OracleId.F2])
def test_well_deutsch_ensemble(f):
    result = well_deutsch_ensemble(EnsembleSpec(size=100, seed=7), f)
    assert result.size == 100
    assert deutsch_correct_fraction(result, f) == 1.0


# Results and reports

def test_ensemble_result_bookkeeping():
    statuses = [TrajectoryStatus.COMPLETE] * 98 + [TrajectoryStatus.ABORTED_NODE] * 2
    result = EnsembleResult(np.zeros(100), np.zeros(100), statuses)
    assert result.abort_rate == pytest.approx(0.02)
    assert not result.reliable
    assert sum(result.status_counts().values()) == 100
    with pytest.raises(ValueError):
        EnsembleResult(np.zeros(3), np.zeros(3), statuses[:2])


def test_write_report(tmp_path):
    result = spin_deutsch_ensemble(EnsembleSpec(size=20, seed=1), OracleId.F3)
    csv_path, summary_path = write_ensemble_report(result, tmp_path / "report.csv", "spin f3")
    with open(csv_path) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["sample_id", "x0", "y0", "x_final", "y_final", "status", "outcome"]
    assert len(rows) == 21
    assert rows[1][1] == "" and rows[1][5] == "complete" and rows[1][6] == "constant"
    assert summary_path.read_text().startswith("spin f3")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

#!/usr/bin/env python3
"""Guidance in the well: phase gradients, trajectories and the energy pointer."""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from models import (
    BoundaryExitError,
    ConfigPoint,
    IntegrationScheme,
    InvalidInputError,
    NodeEncounterError,
    OracleClass,
    OracleId,
    PointerState,
    Trajectory2D,
    TrajectoryStatus,
    WellWaveFunction,
)
from well_model import (
    CoefficientTimeline,
    analytic_phase_gradient,
    convergence_deviation,
    default_measurement_time,
    energy_pointer_velocity,
    estimate_period,
    free_period,
    free_schedule,
    gradient_field,
    guidance_velocity,
    hamilton_jacobi_residual,
    integrate_batch,
    integrate_family,
    integrate_trajectory,
    measure_energy_pointer,
    oracle_schedule,
    phase_gradient,
    plane_wave_gradient,
    quantum_potential,
    run_deutsch_well,
    run_deutsch_well_batch,
    verdict_from_energy_displacement,
    wrap_phase,
)

S = 1.0 / math.sqrt(2.0)

# ψ ∝ sin πy (sin πx + i sin 2πx): S = atan(2 cos πx), nodes only on the walls
TWISTED = WellWaveFunction(np.array([S, 0.0, 1j * S, 0.0]))


def twisted_gradient(x):
    return -2 * math.pi * math.sin(math.pi * x) / (1 + 4 * math.cos(math.pi * x) ** 2)


# Phase gradients

def test_wrap_phase():
    assert wrap_phase(2 * math.pi - 0.1) == pytest.approx(-0.1)
    assert wrap_phase(-2 * math.pi + 0.1) == pytest.approx(0.1)
    assert wrap_phase(math.pi) == pytest.approx(math.pi)
    assert wrap_phase(-math.pi) == pytest.approx(math.pi)


def test_plane_wave_gradient_across_phase_jumps():
    xs = np.linspace(0.05, 0.95, 37)
    np.testing.assert_allclose(plane_wave_gradient(40.0, xs), 40.0, rtol=1e-6)


@pytest.mark.parametrize("x", [0.2, 0.5, 0.8])
def test_phase_gradient_closed_form(x):
    p = ConfigPoint(x, 0.4)
    gx, gy = analytic_phase_gradient(TWISTED, p)
    assert gx == pytest.approx(twisted_gradient(x), rel=1e-10)
    assert gy == pytest.approx(0.0, abs=1e-12)
    fx, fy = phase_gradient(TWISTED, p)
    assert fx == pytest.approx(twisted_gradient(x), rel=1e-5)
    assert fy == pytest.approx(0.0, abs=1e-9)


def test_guidance_velocity_scales_with_mass():
    p = ConfigPoint(0.5, 0.5)
    vx, _ = guidance_velocity(TWISTED.with_mass(4.0), p)
    assert vx == pytest.approx(twisted_gradient(0.5) / 4.0, rel=1e-6)


def test_gradient_near_walls():
    gx, _, ok = gradient_field(TWISTED.coeffs, np.array([1e-5, 1.0 - 1e-5]), 0.5)
    assert ok.all()
    np.testing.assert_allclose(gx, [twisted_gradient(1e-5), twisted_gradient(1.0 - 1e-5)], atol=1e-6)


def test_real_state_has_no_current():
    gx, gy, ok = gradient_field(WellWaveFunction.basis_state(2).coeffs,
                                np.array([0.1, 0.3, 0.7]), np.array([0.2, 0.6, 0.9]))
    assert ok.all()
    np.testing.assert_array_equal(gx, 0.0)
    np.testing.assert_array_equal(gy, 0.0)


def test_node_raises():
    with pytest.raises(NodeEncounterError):
        phase_gradient(WellWaveFunction.basis_state(3), ConfigPoint(0.5, 0.3))
    with pytest.raises(NodeEncounterError):
        quantum_potential(WellWaveFunction.basis_state(0), ConfigPoint(0.0, 0.3))


def test_quantum_potential_of_ground_state():
    ground = WellWaveFunction.basis_state(0)
    for x, y in ((0.2, 0.3), (0.5, 0.5), (0.9, 0.1)):
        assert quantum_potential(ground, ConfigPoint(x, y)) == pytest.approx(math.pi ** 2)


def test_hamilton_jacobi_residual():
    rng = np.random.default_rng(5)
    grid = (np.arange(32) + 0.5) / 32
    gx, gy = np.meshgrid(grid, grid, indexing="ij")
    for _ in range(5):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        w = WellWaveFunction(c / np.linalg.norm(c))
        residual = hamilton_jacobi_residual(w, gx, gy, t=0.3)
        assert np.nanmax(residual) < 1e-4
        assert np.count_nonzero(np.isfinite(residual)) > 0.5 * residual.size


# Trajectories

def test_stationary_state_trajectory_rests():
    trajectory = integrate_trajectory(WellWaveFunction.basis_state(0), free_schedule(1.0),
                                      ConfigPoint(0.3, 0.6), 0.01)
    assert trajectory.is_complete
    _, xs, ys = trajectory.as_arrays()
    np.testing.assert_allclose(xs, 0.3, atol=1e-10)
    np.testing.assert_allclose(ys, 0.6, atol=1e-10)
    assert trajectory.times[-1] == pytest.approx(1.0)


def test_free_motion_is_periodic():
    w0 = WellWaveFunction.from_product([S, S], [S, -S], mass=1.0)
    period = free_period(1.0)
    trajectory = integrate_trajectory(w0, free_schedule(2 * period), ConfigPoint(0.45, 0.55), 1e-3,
                                      IntegrationScheme.RK4)
    assert trajectory.is_complete
    times, xs, ys = trajectory.as_arrays()
    assert np.ptp(xs) > 1e-2
    for k in (1, 2):
        assert np.interp(k * period, times, xs) == pytest.approx(0.45, abs=1e-4)
        assert np.interp(k * period, times, ys) == pytest.approx(0.55, abs=1e-4)


def test_estimate_period_of_sampled_oscillation():
    times = np.linspace(0.0, 2.0, 2001)
    trajectory = Trajectory2D.from_arrays(times, 0.5 + 0.1 * np.sin(2 * math.pi * times / 0.4),
                                          0.5 + 0.1 * np.cos(2 * math.pi * times / 0.4), 1e-3)
    assert estimate_period(trajectory, "x") == pytest.approx(0.4, rel=1e-3)
    assert estimate_period(trajectory, "y") == pytest.approx(0.4, rel=1e-3)


def test_estimate_period_needs_oscillation():
    times = np.linspace(0.0, 1.0, 101)
    trajectory = Trajectory2D.from_arrays(times, np.full(101, 0.3), np.full(101, 0.6), 0.01)
    with pytest.raises(InvalidInputError):
        estimate_period(trajectory)
    with pytest.raises(InvalidInputError):
        estimate_period(trajectory, "z")


def test_aux_gate_leaves_data_coordinate():
    w0 = WellWaveFunction.from_product([1.0, 0.0], [1.0, 0.0], mass=10.0)
    trajectory = integrate_trajectory(w0, oracle_schedule(OracleId.F3), ConfigPoint(0.35, 0.4), 0.01)
    _, xs, ys = trajectory.as_arrays()
    np.testing.assert_allclose(xs, 0.35, atol=1e-9)
    assert np.ptp(ys) > 1e-3


def test_batch_aborts():
    timeline = CoefficientTimeline.build(WellWaveFunction.basis_state(3), free_schedule(0.1), 0.01)
    batch = integrate_batch(timeline, np.array([[0.0, 0.5], [0.5, 0.3], [0.3, 0.3]]), record=True)
    assert batch.statuses == [TrajectoryStatus.ABORTED_BOUNDARY, TrajectoryStatus.ABORTED_NODE,
                              TrajectoryStatus.COMPLETE]
    assert batch.abort_rate == pytest.approx(2 / 3)
    np.testing.assert_array_equal(batch.final[1], [0.5, 0.3])
    assert batch.trajectory(1).status is TrajectoryStatus.ABORTED_NODE
    assert len(batch.trajectory(2).times) == timeline.steps + 1
    with pytest.raises(BoundaryExitError):
        batch.trajectory(0).require_complete()
    with pytest.raises(NodeEncounterError):
        batch.trajectory(1).require_complete()
    assert batch.trajectory(2).require_complete().is_complete


@pytest.mark.parametrize("scheme", list(IntegrationScheme))
def test_wall_hit_is_a_boundary_exit(scheme):
    # v_x ≈ -20 at x = 0.05: the first half step already lands beyond x = 0
    light = WellWaveFunction(TWISTED.coeffs, 0.01)
    timeline = CoefficientTimeline.build(light, free_schedule(0.01), 0.01)
    batch = integrate_batch(timeline, np.array([[0.05, 0.5]]), scheme)
    assert batch.statuses == [TrajectoryStatus.ABORTED_BOUNDARY]
    np.testing.assert_array_equal(batch.final[0], [0.05, 0.5])


def test_batch_without_paths():
    timeline = CoefficientTimeline.build(WellWaveFunction.basis_state(0), free_schedule(0.1), 0.01)
    batch = integrate_batch(timeline, np.array([[0.3, 0.3]]))
    with pytest.raises(InvalidInputError):
        batch.trajectory(0)


def test_start_must_be_interior():
    with pytest.raises(InvalidInputError):
        integrate_trajectory(WellWaveFunction.basis_state(0), free_schedule(0.1),
                             ConfigPoint(0.0, 0.5), 0.01)


def test_family_and_convergence():
    w0 = WellWaveFunction.from_product([S, S], [S, -S], mass=1.0)
    schedule = free_schedule(free_period(1.0))
    # x quantiles 0.47 and 0.76, y quantile 0.53; the nodes at x = 2/3 (t = 0) and
    # x = 1/3 (half a period) carry quantiles 0.977 and 0.023
    starts = [ConfigPoint(0.3, 0.7), ConfigPoint(0.4, 0.7)]
    coarse = integrate_family(w0, schedule, starts, 2e-3, IntegrationScheme.RK4)
    fine = integrate_family(w0, schedule, starts, 1e-3, IntegrationScheme.RK4)
    assert len(coarse) == 2
    for run, refined in zip(coarse, fine):
        assert run.is_complete and refined.is_complete
        assert convergence_deviation(run, run) == 0.0
        assert convergence_deviation(run, refined) < 1e-3


# Oracle family: |+>|->, m = 10, starts on the diagonal

ORACLE_GRID = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]


@pytest.fixture(scope="module")
def oracle_family():
    w0 = WellWaveFunction.from_product([S, S], [S, -S], mass=10.0)
    starts = [ConfigPoint(u, u) for u in ORACLE_GRID]
    return integrate_family(w0, oracle_schedule(OracleId.F2), starts, 0.01)


def test_oracle_family_completes(oracle_family):
    assert all(t.is_complete for t in oracle_family)


def test_oracle_keeps_y_fixed(oracle_family):
    for start, trajectory in zip(ORACLE_GRID, oracle_family):
        _, _, ys = trajectory.as_arrays()
        assert np.max(np.abs(ys - start)) < 1e-9


def test_oracle_x_drift_is_monotone(oracle_family):
    for trajectory in oracle_family:
        _, xs, _ = trajectory.as_arrays()
        steps = np.diff(xs)
        assert np.all(steps >= -1e-12) or np.all(steps <= 1e-12)
    _, xs, _ = oracle_family[0].as_arrays()
    assert xs[-1] - xs[0] > 0.1


def test_oracle_trajectories_never_cross(oracle_family):
    paths = np.array([trajectory.as_arrays()[1] for trajectory in oracle_family])
    assert np.all(np.diff(paths, axis=0) > 0.0)


# Energy pointer and the Deutsch run

def test_default_measurement_time():
    assert default_measurement_time() == pytest.approx(10 * 0.05 / (3 * math.pi ** 2), rel=1e-12)
    assert default_measurement_time(2.0, 0.1) == pytest.approx(1.0 / (6 * math.pi ** 2), rel=1e-12)


def test_measure_energy_pointer():
    state = measure_energy_pointer(WellWaveFunction.basis_state(0), PointerState(), 1.0, 0.1)
    np.testing.assert_allclose(state.centers, [0.1 * math.pi ** 2, 0.4 * math.pi ** 2])
    np.testing.assert_allclose(state.weights, [1.0, 0.0])
    with pytest.raises(InvalidInputError):
        measure_energy_pointer(WellWaveFunction.basis_state(0), PointerState(), 1.0, -0.1)
    with pytest.raises(InvalidInputError):
        measure_energy_pointer(WellWaveFunction.basis_state(0), PointerState(), 0.0, 0.1)


def test_energy_pointer_velocity():
    low = measure_energy_pointer(WellWaveFunction.basis_state(1), PointerState(), 2.0, 0.0)
    v, ok = energy_pointer_velocity(low, np.array([-0.1, 0.0, 0.1]), 0.0)
    assert ok.all()
    np.testing.assert_allclose(v, 2.0 * math.pi ** 2)
    high = measure_energy_pointer(WellWaveFunction.basis_state(2), PointerState(), 1.0, 0.0)
    v, _ = energy_pointer_velocity(high, np.array([0.0]), 0.0)
    np.testing.assert_allclose(v, 4.0 * math.pi ** 2)


def test_energy_verdict():
    t = default_measurement_time()
    assert verdict_from_energy_displacement(math.pi ** 2 * t, 1.0, t) is OracleClass.CONSTANT
    assert verdict_from_energy_displacement(4 * math.pi ** 2 * t, 1.0, t) is OracleClass.BALANCED


@pytest.mark.parametrize("f", list(OracleId))
def test_deutsch_well(f):
    result = run_deutsch_well(f)
    assert result.correct
    p1, p2 = result.final_state.data_probabilities()
    assert max(p1, p2) == pytest.approx(1.0, abs=1e-9)
    assert result.pointer_trajectory.status is TrajectoryStatus.COMPLETE


def test_deutsch_well_batch():
    rng = np.random.default_rng(2)
    points = rng.uniform(0.05, 0.95, size=(20, 2))
    z0 = rng.normal(0.0, 0.05, size=20)
    batch = run_deutsch_well_batch(OracleId.F1, points, z0)
    assert batch.pointer_ok.all()
    assert all(v is OracleClass.BALANCED for v in batch.verdicts)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

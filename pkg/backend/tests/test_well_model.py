#!/usr/bin/env python3
"""Infinite-well basis, potential matrix elements and gate schedules."""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from circuits.gates import I2, X
from models import (
    CoefficientScheme,
    ConfigPoint,
    GateSegment,
    InvalidInputError,
    NormalizationError,
    OracleId,
    SegmentKind,
    WellWaveFunction,
)
from well_model import (
    ORACLE_A,
    ORACLE_B,
    ORACLE_C,
    CoefficientTimeline,
    PotentialKind,
    aux_only,
    candidate_table,
    check_oracle_schedule,
    check_schedule,
    closed_form_candidate_table,
    data_density,
    deutsch_schedule,
    eigenenergy,
    evolve_coeffs,
    evolve_schedule,
    evolve_segment,
    free_period,
    free_wait,
    hadamard_schedule,
    intended_hadamard,
    local_manipulation_deviation,
    omega,
    oracle_matched_mass,
    oracle_potential,
    oracle_potential_elements,
    oracle_schedule,
    perturbation_matrix_elements,
    psi_at,
    schedule_unitary,
    solve_oracle_potential_constants,
    standard_integrals,
    x_marginal_density,
    y_marginal_density,
)
from well_model.basis import basis_function

S = 1.0 / math.sqrt(2.0)


def random_well_state(rng, mass=1.0):
    c = rng.normal(size=4) + 1j * rng.normal(size=4)
    return WellWaveFunction(c / np.linalg.norm(c), mass)


# Basis

def test_energies_and_period():
    assert eigenenergy(1, 1.0) == pytest.approx(math.pi ** 2 / 2)
    assert eigenenergy(2, 2.0) == pytest.approx(math.pi ** 2)
    assert omega(1.0) == pytest.approx(-3 * math.pi ** 2 / 4)
    assert free_period(1.0) == pytest.approx(4.0 / (3.0 * math.pi))
    with pytest.raises(InvalidInputError):
        eigenenergy(3, 1.0)
    with pytest.raises(InvalidInputError):
        eigenenergy(1, 0.0)


@pytest.mark.parametrize("n", [1, 2])
def test_basis_functions_orthonormal(n):
    norm, _ = integrate.quad(lambda u: basis_function(n, u) ** 2, 0.0, 1.0)
    overlap, _ = integrate.quad(lambda u: basis_function(1, u) * basis_function(2, u), 0.0, 1.0)
    assert norm == pytest.approx(1.0, abs=1e-12)
    assert overlap == pytest.approx(0.0, abs=1e-12)


def test_psi_at():
    ground = WellWaveFunction.basis_state(0)
    assert psi_at(ground, ConfigPoint(0.5, 0.5)) == pytest.approx(2.0)
    assert abs(psi_at(ground, ConfigPoint(0.0, 0.3))) < 1e-15
    mixed = WellWaveFunction.from_product([S, S], [1.0, 0.0])
    expected = 2 * S * (math.sin(math.pi * 0.25) + math.sin(math.pi * 0.5)) * math.sin(math.pi * 0.4)
    assert psi_at(mixed, ConfigPoint(0.25, 0.4)) == pytest.approx(expected)


def test_marginals_normalised():
    w = random_well_state(np.random.default_rng(3))
    for marginal in (x_marginal_density, y_marginal_density):
        area, _ = integrate.quad(lambda u: float(marginal(w, u)), 0.0, 1.0)
        assert area == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("sign", [1, -1])
def test_data_density_normalised(sign):
    area, _ = integrate.quad(lambda x: float(data_density(sign, x)), 0.0, 1.0)
    assert area == pytest.approx(1.0, abs=1e-12)


def test_well_state_norm():
    w = WellWaveFunction(np.array([1.0, 1.0, 0.0, 0.0]))
    assert w.norm_defect == pytest.approx(1.0)
    with pytest.raises(NormalizationError):
        w.require_normalized()
    assert w.normalized().norm == pytest.approx(1.0)
    with pytest.raises(InvalidInputError):
        WellWaveFunction(np.zeros(3))
    with pytest.raises(InvalidInputError):
        ConfigPoint(1.2, 0.5)


# Potentials

def test_standard_integrals_match_closed_forms():
    rows = standard_integrals()
    assert len(rows) == 8
    for row in rows:
        assert row.error < 1e-10, row.label


def test_candidate_table_matches_closed_forms():
    computed = candidate_table()
    exact = closed_form_candidate_table()
    for kind, matrix in exact.items():
        np.testing.assert_allclose(computed[kind], matrix, atol=1e-10)


def test_delta_v_gives_pauli_x():
    np.testing.assert_allclose(perturbation_matrix_elements(PotentialKind.DELTA_V), X.real, atol=1e-10)


def test_oracle_potential_constants():
    a, b, c = solve_oracle_potential_constants()
    assert a == pytest.approx(ORACLE_A, rel=1e-10)
    assert b == pytest.approx(ORACLE_B, rel=1e-10)
    assert c == pytest.approx(ORACLE_C, rel=1e-10)
    assert ORACLE_A == pytest.approx(52 / 27)


def test_oracle_potential_elements():
    expected = np.zeros((4, 4))
    expected[:2, :2] = (X - I2).real
    np.testing.assert_allclose(oracle_potential_elements(), expected, atol=1e-8)
    np.testing.assert_allclose(perturbation_matrix_elements(PotentialKind.U_XY), expected, atol=1e-8)


def test_oracle_potential_double_integral():
    def element(ny):
        integrand = lambda y, x: (basis_function(1, x) ** 2 * basis_function(1, y)
                                  * oracle_potential(x, y) * basis_function(ny, y))
        value, _ = integrate.dblquad(integrand, 0.0, 1.0, 0.0, 1.0)
        return value

    assert element(1) == pytest.approx(-1.0, abs=1e-7)
    assert element(2) == pytest.approx(1.0, abs=1e-7)


def test_tampered_constant_breaks_elements():
    tampered = oracle_potential_elements(a=ORACLE_A * 1.01)
    expected = np.zeros((4, 4))
    expected[:2, :2] = (X - I2).real
    assert np.max(np.abs(tampered - expected)) > 1e-3


# Schedules

def test_free_wait():
    assert free_wait(math.pi / 2, 1.0) == pytest.approx(1.0 / math.pi)
    wait = free_wait(math.pi / 2, 10.0)
    assert abs(omega(10.0)) * wait % math.pi == pytest.approx(3 * math.pi / 4)


@pytest.mark.parametrize("qubits", ["data", "aux", "both"])
@pytest.mark.parametrize("mass", [1.0, 10.0])
def test_hadamard_schedules(qubits, mass):
    schedule = hadamard_schedule(qubits, mass)
    assert check_schedule(schedule, intended_hadamard(qubits), mass)
    kinds = [segment.kind for segment in schedule]
    assert kinds[0] is SegmentKind.FREE and kinds[-1] is SegmentKind.FREE


def test_hadamard_schedule_rejects_unknown_qubit():
    with pytest.raises(InvalidInputError):
        hadamard_schedule("pointer", 1.0)


@pytest.mark.parametrize("f", list(OracleId))
def test_oracle_schedules(f):
    assert check_oracle_schedule(f)


def test_oracle_matched_mass():
    assert oracle_matched_mass() == pytest.approx(3 * math.pi ** 2 / 4)
    assert eigenenergy(2, oracle_matched_mass(1.0)) - eigenenergy(1, oracle_matched_mass(1.0)) \
        == pytest.approx(math.pi)
    with pytest.raises(InvalidInputError):
        oracle_matched_mass(0.0)


def test_oracle_schedule_shapes():
    assert len(oracle_schedule(OracleId.F0)) == 0
    np.testing.assert_array_equal(schedule_unitary(oracle_schedule(OracleId.F0), 1.0), np.eye(4))
    f1 = [segment.kind for segment in oracle_schedule(OracleId.F1)]
    assert f1 == [SegmentKind.XPERT_DATA, SegmentKind.ORACLE, SegmentKind.XPERT_DATA]
    assert aux_only(oracle_schedule(OracleId.F3))
    assert not aux_only(oracle_schedule(OracleId.F2))


def test_euler_oracle_step():
    c = np.array([0.6, 0.2j, 0.5, -0.3]) / np.linalg.norm([0.6, 0.2, 0.5, 0.3])
    w = WellWaveFunction(c, 10.0)
    dt = 0.01
    stepped = evolve_coeffs(w, GateSegment(SegmentKind.ORACLE, math.pi / 2, OracleId.F2), dt,
                            CoefficientScheme.EULER)
    a, b = c[0], c[1]
    expected = [a + 1j * (a - b) * dt, b - 1j * (a - b) * dt, c[2], c[3]]
    np.testing.assert_allclose(stepped.coeffs, expected, atol=1e-15)
    with pytest.raises(InvalidInputError):
        evolve_coeffs(w, GateSegment(SegmentKind.FREE, 1.0), 0.0)


def test_exact_oracle_segment():
    w = WellWaveFunction(0.5 * np.array([1.0, -1.0, 1.0, -1.0]), 10.0)
    segment = GateSegment(SegmentKind.ORACLE, math.pi / 2, OracleId.F2)
    final = evolve_segment(w, segment, 0.01)[-1]
    np.testing.assert_allclose(final.coeffs, 0.5 * np.array([-1.0, 1.0, 1.0, -1.0]), atol=1e-8)


def test_euler_renormalises_at_boundaries():
    w = WellWaveFunction.basis_state(1)
    segment = GateSegment(SegmentKind.XPERT_DATA, math.pi / 4)
    states = evolve_segment(w, segment, 0.01, CoefficientScheme.EULER)
    assert states[-2].norm_defect > 1e-6
    assert states[-1].norm_defect < 1e-12


@pytest.mark.parametrize("scheme", [CoefficientScheme.RK4, CoefficientScheme.EXACT])
def test_stepped_schedule_matches_unitary(scheme):
    w0 = WellWaveFunction.basis_state(1, 10.0)
    schedule = deutsch_schedule(OracleId.F1, 10.0)
    evolved = evolve_schedule(w0, schedule, 1e-3, scheme)
    np.testing.assert_allclose(evolved.coeffs, schedule_unitary(schedule, 10.0) @ w0.coeffs, atol=1e-8)


@pytest.mark.parametrize("f", list(OracleId))
def test_deutsch_schedule_reaches_data_level(f):
    w0 = WellWaveFunction.basis_state(1, 10.0)
    final = evolve_schedule(w0, deutsch_schedule(f, 10.0), 0.01)
    p1, p2 = final.data_probabilities()
    if f in (OracleId.F0, OracleId.F3):
        assert p1 == pytest.approx(1.0, abs=1e-9)
    else:
        assert p2 == pytest.approx(1.0, abs=1e-9)


def test_coefficient_timeline():
    w0 = WellWaveFunction.basis_state(1, 10.0)
    schedule = hadamard_schedule("both", 10.0)
    timeline = CoefficientTimeline.build(w0, schedule, 0.05)
    assert timeline.duration == pytest.approx(schedule.total_duration, abs=1e-12)
    assert np.all(np.diff(timeline.times) > 0)
    assert len(timeline.segment_ids) == timeline.steps
    np.testing.assert_allclose(timeline.final_state().coeffs,
                               schedule_unitary(schedule, 10.0) @ w0.coeffs, atol=1e-10)
    np.testing.assert_array_equal(timeline.at(timeline.duration), timeline.coeffs[-1])
    mid = 0.5 * (timeline.times[3] + timeline.times[4])
    assert np.linalg.norm(timeline.at(mid)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvalidInputError):
        timeline.at(-0.1)


def test_aux_gates_leave_data_marginal_alone():
    w = random_well_state(np.random.default_rng(11), mass=10.0)
    xs = np.linspace(0.01, 0.99, 50)
    assert local_manipulation_deviation(w, oracle_schedule(OracleId.F3), xs, 0.01) < 1e-12
    assert local_manipulation_deviation(w, hadamard_schedule("data", 10.0), xs, 0.01) > 1e-3


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

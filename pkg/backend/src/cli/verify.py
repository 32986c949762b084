"""Verification suites run by the ``verify`` command."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from circuits import (
    deutsch_final_state,
    density_matrix,
    euler_zxz_hadamard,
    generator_unitary,
    hadamard,
    hadamard_generator,
    oracle_gate,
    oracle_generator,
    partial_trace_data,
    rotation,
)
from circuits.gates import H, I2, X
from ensemble import born_frequencies, equivariance_check, spin_measurement_model, well_schedule_model
from models import EnsembleSpec, OracleId, PilotWaveError, WellWaveFunction
from spin_model import SpinPilotWave
from well_model import (
    ORACLE_A,
    ORACLE_B,
    ORACLE_C,
    PotentialKind,
    standard_integrals,
    candidate_table,
    check_oracle_schedule,
    check_schedule,
    closed_form_candidate_table,
    gradient_field,
    hadamard_schedule,
    hamilton_jacobi_residual,
    intended_hadamard,
    oracle_matched_mass,
    oracle_potential_elements,
    oracle_schedule,
    perturbation_matrix_elements,
    solve_oracle_potential_constants,
)

logger = logging.getLogger(__name__)

VERIFY_SAMPLES = 10_000
SPIN_KS_LIMIT = 0.03
WELL_KS_LIMIT = 0.05
DIAGNOSTIC_WELL_MASS = 10.0


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def unitarity_suite() -> SuiteResult:
    """Gates are unitary; the abstract Deutsch pipeline ends in the textbook states."""
    gates = [hadamard().matrix, euler_zxz_hadamard().matrix,
             rotation((0.6, 0.0, 0.8), 1.234).matrix] + [oracle_gate(f).matrix for f in OracleId]
    unitary_error = max(_max_abs(g.conj().T @ g, np.eye(len(g))) for g in gates)
    s = 1.0 / math.sqrt(2.0)
    expected = {
        OracleId.F0: [s, -s, 0, 0], OracleId.F3: [-s, s, 0, 0],
        OracleId.F1: [0, 0, s, -s], OracleId.F2: [0, 0, -s, s],
    }
    state_error = max(_max_abs(deutsch_final_state(f).amps, expected[f]) for f in OracleId)
    trace_error = 0.0
    for f in OracleId:
        reduced = partial_trace_data(density_matrix(deutsch_final_state(f))).matrix
        target = np.diag([1.0, 0.0]) if f in (OracleId.F0, OracleId.F3) else np.diag([0.0, 1.0])
        trace_error = max(trace_error, _max_abs(reduced, target))
    passed = unitary_error < 1e-12 and state_error < 1e-12 and trace_error < 1e-12
    return SuiteResult("unitarity", passed, f"unitarity {unitary_error:.1e}, final states "
                                            f"{state_error:.1e}, partial trace {trace_error:.1e}")


def generator_suite() -> SuiteResult:
    had = hadamard_generator()
    had_error = _max_abs(generator_unitary(had).matrix, H)
    oracle_error = max(_max_abs(generator_unitary(oracle_generator(f)).matrix, oracle_gate(f).matrix)
                       for f in OracleId)
    passed = had_error < 1e-10 and oracle_error < 1e-10
    return SuiteResult("generators", passed, f"Hadamard {had_error:.1e}, oracles {oracle_error:.1e}")


def quadrature_suite(tamper_a: float = 0.0) -> SuiteResult:
    """
    Standard integrals, candidate matrix elements, the solved constants and the assembled
    oracle potential. ``tamper_a`` perturbs A relatively to show the suite can fail.
    """
    a = ORACLE_A * (1.0 + tamper_a)
    table = standard_integrals()
    for row in table:
        logger.info(f"   {row.label:<22} computed {row.computed:+.12f}  "
                    f"closed form {row.closed_form:+.12f}  |Δ| {row.error:.1e}")
    integral_error = max(row.error for row in table)

    computed = candidate_table()
    closed = closed_form_candidate_table()
    element_error = max(_max_abs(computed[k], closed[k]) for k in closed)
    delta_v_error = _max_abs(perturbation_matrix_elements(PotentialKind.DELTA_V), X)

    solved = solve_oracle_potential_constants()
    constants_error = float(np.max(np.abs(solved - np.array([a, ORACLE_B, ORACLE_C]))
                                   / np.abs(np.array([a, ORACLE_B, ORACLE_C]))))
    target = np.zeros((4, 4))
    target[:2, :2] = X.real - I2.real
    oracle_error = _max_abs(oracle_potential_elements(a, ORACLE_B, ORACLE_C), target)

    passed = (integral_error < 1e-8 and element_error < 1e-8 and delta_v_error < 1e-8
              and constants_error < 1e-10 and oracle_error < 1e-8)
    return SuiteResult("quadrature", passed,
                       f"integrals {integral_error:.1e}, elements {element_error:.1e}, "
                       f"δV {delta_v_error:.1e}, A/B/C rel {constants_error:.1e}, "
                       f"U(x,y) {oracle_error:.1e}")


def schedule_suite(mass: float = 10.0) -> SuiteResult:
    hadamards = all(check_schedule(hadamard_schedule(q, mass), intended_hadamard(q), mass)
                    for q in ("data", "aux", "both"))
    oracles = all(check_oracle_schedule(f) for f in OracleId)
    return SuiteResult("schedules", hadamards and oracles,
                       f"Hadamard schedules {'ok' if hadamards else 'FAILED'}, "
                       f"oracle schedules {'ok' if oracles else 'FAILED'}")


def equivariance_suite(seed: int, samples: int = VERIFY_SAMPLES,
                       diagnostic_mass: Optional[float] = DIAGNOSTIC_WELL_MASS) -> SuiteResult:
    """
    Spin measurement and the well oracle U_f2, which is checked at the matched mass.

    At any other mass the trajectories do not carry |ψ|² through U(x, y). With
    ``diagnostic_mass`` the oracle is also run there: its abort rate must stay below the
    threshold, its KS value is only reported.
    """
    spec = EnsembleSpec(size=samples, seed=seed)
    spin_state = SpinPilotWave.prepare(data=(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)))
    spin = equivariance_check(spec, spin_measurement_model(spin_state, 0.5, 1e-3))
    coeffs = 0.5 * np.array([1.0, -1.0, 1.0, -1.0])
    matched = oracle_matched_mass()
    well = equivariance_check(spec, well_schedule_model(WellWaveFunction(coeffs, matched),
                                                        oracle_schedule(OracleId.F2), 0.01))
    spin_ks = spin.ks_statistic if spin.ks_statistic is not None else math.inf
    well_ks = well.ks_statistic if well.ks_statistic is not None else math.inf
    passed = spin_ks < SPIN_KS_LIMIT and well_ks < WELL_KS_LIMIT and spin.reliable and well.reliable
    detail = (f"spin KS {spin_ks:.4f}, well KS {well_ks:.4f} (m = {matched:.4f}), "
              f"aborts {spin.abort_rate:.4f}/{well.abort_rate:.4f}")
    if diagnostic_mass is not None:
        off = equivariance_check(spec, well_schedule_model(WellWaveFunction(coeffs, diagnostic_mass),
                                                           oracle_schedule(OracleId.F2), 0.01))
        off_ks = off.ks_statistic if off.ks_statistic is not None else math.inf
        passed = passed and off.reliable
        detail += f"; m = {diagnostic_mass:g} KS {off_ks:.4f} (diagnostic), aborts {off.abort_rate:.4f}"
    return SuiteResult("equivariance", passed, detail)


def born_suite(seed: int, samples: int = VERIFY_SAMPLES) -> SuiteResult:
    state = SpinPilotWave.prepare(data=(math.sqrt(0.3), math.sqrt(0.7)))
    result = born_frequencies(EnsembleSpec(size=samples, seed=seed), state, 0.5, 1e-3)
    tolerance = 3.0 * math.sqrt(0.3 * 0.7 / samples)
    passed = abs(result.frequencies["1"] - result.expected_frequencies["1"]) <= tolerance
    return SuiteResult("born", passed, f"frequencies {result.frequencies} (±{tolerance:.4f})")


def _random_state(rng: np.random.Generator, product: bool) -> np.ndarray:
    if product:
        data = rng.normal(size=2) + 1j * rng.normal(size=2)
        aux = rng.normal(size=2) + 1j * rng.normal(size=2)
        coeffs = np.kron(data / np.linalg.norm(data), aux / np.linalg.norm(aux))
    else:
        coeffs = rng.normal(size=4) + 1j * rng.normal(size=4)
    return coeffs / np.linalg.norm(coeffs)


def x_velocity_variation(coeffs: np.ndarray, mass: float = 1.0) -> float:
    """Largest spread over y of the x-velocity, taken over a few x positions."""
    xs = np.array([0.15, 0.35, 0.55, 0.75])
    ys = np.linspace(0.05, 0.95, 19)
    gx, _, ok = gradient_field(coeffs, xs[:, None], ys[None, :])
    vx = np.where(ok, gx / mass, np.nan)
    return float(np.nanmax(np.nanmax(vx, axis=1) - np.nanmin(vx, axis=1)))


def locality_suite(seed: int, count: int = 100) -> SuiteResult:
    rng = np.random.default_rng(seed)
    product_worst = max(x_velocity_variation(_random_state(rng, True)) for _ in range(count))
    entangled_hits = sum(x_velocity_variation(_random_state(rng, False)) > 1e-3 for _ in range(count))
    passed = product_worst < 1e-9 and entangled_hits >= 0.95 * count
    return SuiteResult("locality", passed, f"product max variation {product_worst:.1e}, "
                                           f"entangled {entangled_hits}/{count} y-dependent")


def hamilton_jacobi_suite(seed: int, count: int = 20) -> SuiteResult:
    rng = np.random.default_rng(seed)
    grid = (np.arange(32) + 0.5) / 32
    gx, gy = np.meshgrid(grid, grid, indexing="ij")
    worst = 0.0
    for _ in range(count):
        w = WellWaveFunction(_random_state(rng, False), 1.0)
        residual = hamilton_jacobi_residual(w, gx, gy, t=float(rng.uniform(0.0, 1.0)))
        worst = max(worst, float(np.nanmax(residual)))
    return SuiteResult("hamilton-jacobi", worst < 1e-4, f"max residual {worst:.1e}")


def run_suites(seed: int, tamper_a: float = 0.0, samples: int = VERIFY_SAMPLES) -> List[SuiteResult]:
    suites: List[Tuple[str, Callable[[], SuiteResult]]] = [
        ("unitarity", unitarity_suite),
        ("generators", generator_suite),
        ("quadrature", lambda: quadrature_suite(tamper_a)),
        ("schedules", schedule_suite),
        ("equivariance", lambda: equivariance_suite(seed, samples)),
        ("born", lambda: born_suite(seed, samples)),
        ("locality", lambda: locality_suite(seed)),
        ("hamilton-jacobi", lambda: hamilton_jacobi_suite(seed)),
    ]
    results = []
    for name, suite in suites:
        logger.info(f"▶ {name}")
        try:
            results.append(suite())
        except PilotWaveError as e:
            results.append(SuiteResult(name, False, f"error: {e}"))
    return results

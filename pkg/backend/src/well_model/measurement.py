"""Energy measurement of the data qubit with a pointer, and the full Deutsch run in the well."""

import logging
import math
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np
from scipy import special

from circuits import classify
from models import (
    CoefficientScheme,
    ConfigPoint,
    IntegrationScheme,
    InvalidInputError,
    OracleClass,
    OracleId,
    PointerState,
    PointerTrajectory,
    Trajectory2D,
    TrajectoryStatus,
    WellWaveFunction,
)
from .guidance import DEFAULT_GRADIENT_DELTA
from .schedule import CoefficientTimeline, deutsch_schedule
from .trajectories import TrajectoryBatch, integrate_batch

logger = logging.getLogger(__name__)

LEVEL_ENERGY_FACTORS = np.array([1.0, 4.0]) * math.pi ** 2  # n²π² for n = 1, 2
POINTER_NODE_FLOOR = 1e-300
SEPARATION_WIDTHS = 10.0
# minimum pointer steps per measurement
POINTER_STEPS = 200


def pointer_step(dt: float, measurement_time: float) -> float:
    return min(dt, measurement_time / POINTER_STEPS) if measurement_time > 0 else dt


def default_measurement_time(coupling: float = 1.0, pointer_width: float = 0.05) -> float:
    """δt separating the ψ_1 and ψ_2 packets by ten widths: 3aπ²δt = 10w."""
    gap = LEVEL_ENERGY_FACTORS[1] - LEVEL_ENERGY_FACTORS[0]
    return SEPARATION_WIDTHS * pointer_width / (coupling * gap)


@dataclass(frozen=True, eq=False)
class EnergyPointerState:
    """
    Data-level weights |c_n|² with one pointer packet per level.

    The packet of level n sits at its initial centre plus a·t·n²π² after a measurement of
    duration t.
    """

    weights: np.ndarray
    pointers: Tuple[PointerState, PointerState]
    coupling: float

    @property
    def centers(self) -> np.ndarray:
        return np.array([p.center for p in self.pointers])

    def log_component_densities(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        with np.errstate(divide="ignore"):
            log_weights = np.log(self.weights)
        return np.stack([lw + p.log_density(z) for lw, p in zip(log_weights, self.pointers)])

    def density(self, z) -> np.ndarray:
        return np.exp(special.logsumexp(self.log_component_densities(z), axis=0))


def measure_energy_pointer(w: WellWaveFunction, pointer: PointerState, a: float,
                           dt: float) -> EnergyPointerState:
    """
    Couple the pointer to the data energy through H = ia ∂²_x ∂_z for a time dt.

    Each ψ_n component of the data qubit drags its pointer packet by a·dt·n²π².
    """
    if dt < 0:
        raise InvalidInputError(f"Measurement duration must be nonnegative, got {dt}")
    if not a > 0:
        raise InvalidInputError(f"Measurement coupling must be positive, got {a}")
    weights = np.array(w.data_probabilities())
    shifts = a * dt * LEVEL_ENERGY_FACTORS
    return EnergyPointerState(weights, (pointer.shifted(shifts[0]), pointer.shifted(shifts[1])), a)


def energy_pointer_velocity(initial: EnergyPointerState, z, t_elapsed: float):
    """
    Vectorised dz/dt = a Σ_n n²π² ρ_n(z) / Σ_n ρ_n(z) after ``t_elapsed`` of measurement.

    Returns:
        (velocity, ok) with ok False below the node floor
    """
    shifted = replace(initial, pointers=tuple(
        p.shifted(initial.coupling * t_elapsed * factor)
        for p, factor in zip(initial.pointers, LEVEL_ENERGY_FACTORS)
    ))
    logs = shifted.log_component_densities(z)
    log_rho = special.logsumexp(logs, axis=0)
    peak = float(np.max(special.logsumexp(shifted.log_component_densities(shifted.centers), axis=0)))
    ok = log_rho >= peak + math.log(POINTER_NODE_FLOOR)
    with np.errstate(invalid="ignore"):
        weights = np.nan_to_num(np.exp(logs - log_rho))
    factors = LEVEL_ENERGY_FACTORS.reshape((2,) + (1,) * (np.ndim(logs) - 1))
    return initial.coupling * np.sum(factors * weights, axis=0), ok


def integrate_energy_pointer(initial: EnergyPointerState, z0, duration: float, dt: float,
                             scheme: IntegrationScheme = IntegrationScheme.EULER):
    """
    Integrate the pointer coordinate(s) through the measurement.

    Returns:
        (final positions, ok mask, step size, position history)
    """
    if not dt > 0:
        raise InvalidInputError(f"Step size must be positive, got {dt}")
    z = np.array(z0, dtype=float)
    ok = np.ones_like(z, dtype=bool)
    steps = int(math.ceil(duration / dt - 1e-12)) if duration > 0 else 0
    h = duration / steps if steps else 0.0
    history = [z.copy()]
    for k in range(steps):
        t = k * h
        if scheme is IntegrationScheme.RK4:
            k1, g1 = energy_pointer_velocity(initial, z, t)
            k2, g2 = energy_pointer_velocity(initial, z + 0.5 * h * k1, t + 0.5 * h)
            k3, g3 = energy_pointer_velocity(initial, z + 0.5 * h * k2, t + 0.5 * h)
            k4, g4 = energy_pointer_velocity(initial, z + h * k3, t + h)
            increment = h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            good = g1 & g2 & g3 & g4
        else:
            k1, good = energy_pointer_velocity(initial, z, t)
            increment = h * k1
        ok &= good
        z = np.where(ok, z + increment, z)
        history.append(z.copy())
    return z, ok, h, np.array(history)


def verdict_from_energy_displacement(displacement, coupling: float, duration: float) -> OracleClass:
    """Closer to the ψ_1 shift (aπ²δt) → constant, closer to ψ_2 (4aπ²δt) → balanced."""
    midpoint = 0.5 * coupling * duration * float(np.sum(LEVEL_ENERGY_FACTORS))
    return OracleClass.CONSTANT if displacement < midpoint else OracleClass.BALANCED


@dataclass
class WellDeutschResult:
    """One configuration trajectory through the gates plus the energy pointer reading."""

    oracle: OracleId
    trajectory: Trajectory2D
    pointer_trajectory: PointerTrajectory
    verdict: OracleClass
    final_state: WellWaveFunction
    pointer_state: EnergyPointerState

    @property
    def correct(self) -> bool:
        return self.verdict is classify(self.oracle)


def _deutsch_timeline(f: OracleId, mass: float, dt: float, coefficient_scheme: CoefficientScheme,
                      oracle_duration: float) -> CoefficientTimeline:
    w0 = WellWaveFunction.basis_state(1, mass)
    schedule = deutsch_schedule(f, mass, oracle_duration)
    return CoefficientTimeline.build(w0, schedule, dt, coefficient_scheme)


def run_deutsch_well(
    f: OracleId,
    p0: ConfigPoint = ConfigPoint(0.3, 0.3),
    z0: float = 0.0,
    mass: float = 10.0,
    dt: float = 0.01,
    scheme: IntegrationScheme = IntegrationScheme.EULER,
    coefficient_scheme: CoefficientScheme = CoefficientScheme.EXACT,
    oracle_duration: float = math.pi / 2.0,
    pointer_width: float = 0.05,
    coupling: float = 1.0,
    measurement_time: Optional[float] = None,
    delta: float = DEFAULT_GRADIENT_DELTA
) -> WellDeutschResult:
    """
    Run |0>_d|1>_a through H⊗H, U_f, H⊗I in the well and read the data energy.

    The configuration (x, y) follows the guidance equation through every gate segment;
    during the measurement only the pointer coordinate moves.
    """
    f = OracleId.parse(f)
    if measurement_time is None:
        measurement_time = default_measurement_time(coupling, pointer_width)
    timeline = _deutsch_timeline(f, mass, dt, coefficient_scheme, oracle_duration)
    batch = integrate_batch(timeline, np.array([p0.as_tuple()]), scheme, delta, record=True)
    trajectory = batch.trajectory(0)

    final_state = timeline.final_state()
    pointer = measure_energy_pointer(final_state, PointerState(0.0, pointer_width), coupling, 0.0)
    z_final, ok, h, history = integrate_energy_pointer(
        pointer, np.array([z0]), measurement_time, pointer_step(dt, measurement_time), scheme)
    pointer_trajectory = PointerTrajectory(dt=h)
    start = timeline.duration
    for k, z in enumerate(history[:, 0]):
        pointer_trajectory.append(start + k * h, z)
    if not bool(ok[0]):
        pointer_trajectory.status = TrajectoryStatus.ABORTED_NODE
        pointer_trajectory.message = "pointer density below node floor"

    verdict = verdict_from_energy_displacement(float(z_final[0]) - z0, coupling, measurement_time)
    result = WellDeutschResult(
        oracle=f,
        trajectory=trajectory,
        pointer_trajectory=pointer_trajectory,
        verdict=verdict,
        final_state=final_state,
        pointer_state=measure_energy_pointer(final_state, PointerState(0.0, pointer_width),
                                             coupling, measurement_time)
    )
    status = "✅" if result.correct else "❌"
    logger.info(f"{status} Well model, oracle {f.value}: pointer moved "
                f"{float(z_final[0]) - z0:+.6f} → {verdict.value}")
    return result


@dataclass
class WellDeutschBatch:
    batch: TrajectoryBatch
    pointer_initial: np.ndarray
    pointer_final: np.ndarray
    pointer_ok: np.ndarray
    verdicts: List[OracleClass]
    final_state: WellWaveFunction

    @property
    def completed(self) -> np.ndarray:
        return self.batch.completed & self.pointer_ok


def run_deutsch_well_batch(
    f: OracleId,
    points: np.ndarray,
    z0: np.ndarray,
    mass: float = 10.0,
    dt: float = 0.01,
    scheme: IntegrationScheme = IntegrationScheme.EULER,
    coefficient_scheme: CoefficientScheme = CoefficientScheme.EXACT,
    oracle_duration: float = math.pi / 2.0,
    pointer_width: float = 0.05,
    coupling: float = 1.0,
    measurement_time: Optional[float] = None,
    delta: float = DEFAULT_GRADIENT_DELTA,
    progress: bool = False
) -> WellDeutschBatch:
    """Deutsch verdicts for many (x, y, z) starting configurations sharing one timeline."""
    f = OracleId.parse(f)
    if measurement_time is None:
        measurement_time = default_measurement_time(coupling, pointer_width)
    timeline = _deutsch_timeline(f, mass, dt, coefficient_scheme, oracle_duration)
    batch = integrate_batch(timeline, points, scheme, delta, progress=progress)
    final_state = timeline.final_state()
    pointer = measure_energy_pointer(final_state, PointerState(0.0, pointer_width), coupling, 0.0)
    z0 = np.asarray(z0, dtype=float)
    z_final, ok, _, _ = integrate_energy_pointer(
        pointer, z0, measurement_time, pointer_step(dt, measurement_time), scheme)
    verdicts = [verdict_from_energy_displacement(d, coupling, measurement_time) for d in z_final - z0]
    return WellDeutschBatch(batch, z0, z_final, ok, verdicts, final_state)


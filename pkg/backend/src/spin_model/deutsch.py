"""The Deutsch algorithm in Bell's spin toy model."""

import logging
import math
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np

from circuits import classify, hadamard_generator, oracle_generator, propagator
from models import (
    HermitianGenerator,
    IntegrationScheme,
    OracleClass,
    OracleId,
    PointerState,
    PointerTrajectory,
    TrajectoryStatus,
)
from .dynamics import PointerBatchResult, integrate_pointer, integrate_pointer_batch
from .pilot_wave import SpinPilotWave, expand_generator, gate_current, measure_pointer

logger = logging.getLogger(__name__)

DEFAULT_COUPLING = 1.0
DEFAULT_POINTER_WIDTH = 0.05
SEPARATION_WIDTHS = 10.0


def default_measurement_time(coupling: float = DEFAULT_COUPLING,
                             pointer_width: float = DEFAULT_POINTER_WIDTH) -> float:
    """Measurement time giving g·Δt = 10 w."""
    return SEPARATION_WIDTHS * pointer_width / coupling


def deutsch_gate_sequence(f: OracleId) -> List[Tuple[str, HermitianGenerator]]:
    """Generators of H⊗H, U_f and H⊗I, each acting on the spins only."""
    had = hadamard_generator()
    both = HermitianGenerator(expand_generator(had, "both"), had.duration, "H_Had⊗I + I⊗H_Had")
    data = HermitianGenerator(expand_generator(had, "data"), had.duration, "H_Had⊗I")
    return [
        ("H⊗H", both),
        (f"U_{f.value}", oracle_generator(f)),
        ("H⊗I", data),
    ]


def verdict_from_displacement(displacement: float) -> OracleClass:
    """Pointer moved up (|0>_d) → constant, down (|1>_d) → balanced."""
    return OracleClass.CONSTANT if displacement > 0 else OracleClass.BALANCED


@dataclass
class SpinDeutschResult:
    """One pointer trajectory through the full circuit."""

    oracle: OracleId
    trajectory: PointerTrajectory
    verdict: OracleClass
    pre_measurement: SpinPilotWave
    post_measurement: SpinPilotWave
    max_gate_velocity: float

    @property
    def correct(self) -> bool:
        return self.verdict is classify(self.oracle)


def evolve_through_gates(state: SpinPilotWave, f: OracleId) -> SpinPilotWave:
    """Apply the three gate evolutions exactly (the pointer is not involved)."""
    for _, generator in deutsch_gate_sequence(f):
        unitary = propagator(generator.matrix, generator.duration)
        state = replace(state, coefficients=unitary @ state.coefficients)
    return state


def run_deutsch_spin(
    f: OracleId,
    y0: float = 0.0,
    measurement_time: Optional[float] = None,
    coupling: float = DEFAULT_COUPLING,
    pointer_width: float = DEFAULT_POINTER_WIDTH,
    dt: float = 1e-3,
    scheme: IntegrationScheme = IntegrationScheme.EULER
) -> SpinDeutschResult:
    """
    Run |0>_d|1>_a through H⊗H, U_f, H⊗I and the pointer measurement.

    During the gates the pointer velocity is the gate current (zero); during the
    measurement the pointer follows the guidance equation.

    Args:
        f: Oracle function
        y0: Initial pointer position
        measurement_time: Δt of the measurement (default gives g·Δt = 10 w)
        coupling: g
        pointer_width: w of the initial packet
        dt: Nominal step
        scheme: Stepper for the measurement phase

    Returns:
        SpinDeutschResult
    """
    if measurement_time is None:
        measurement_time = default_measurement_time(coupling, pointer_width)

    state = SpinPilotWave.prepare(pointer=PointerState(0.0, pointer_width), coupling=coupling)
    trajectory = PointerTrajectory(dt=dt)
    trajectory.append(0.0, y0)
    y = float(y0)
    t = 0.0
    max_gate_velocity = 0.0

    for label, generator in deutsch_gate_sequence(f):
        steps = max(1, int(math.ceil(generator.duration / dt - 1e-12)))
        h = generator.duration / steps
        start = state.coefficients
        for k in range(steps):
            current = replace(state, coefficients=propagator(generator.matrix, k * h) @ start)
            velocity = float(gate_current(current, generator, y))
            max_gate_velocity = max(max_gate_velocity, abs(velocity))
            y += h * velocity
            trajectory.append(t + (k + 1) * h, y)
        state = replace(state, coefficients=propagator(generator.matrix, generator.duration) @ start)
        t += generator.duration
        logger.debug(f"Gate {label} done at t={t:.4f}, pointer at y={y:.6g}")

    measurement = integrate_pointer(state, y, measurement_time, dt, scheme, t_start=t)
    trajectory.extend(measurement)
    verdict = verdict_from_displacement(trajectory.final_position - y0)

    result = SpinDeutschResult(
        oracle=f,
        trajectory=trajectory,
        verdict=verdict,
        pre_measurement=state,
        post_measurement=measure_pointer(state, measurement_time),
        max_gate_velocity=max_gate_velocity
    )
    status = "✅" if result.correct else "❌"
    logger.info(f"{status} Spin model, oracle {f.value}: displacement "
                f"{trajectory.final_position - y0:+.6f} → {verdict.value}")
    if trajectory.status is not TrajectoryStatus.COMPLETE:
        logger.warning(f"⚠️  Trajectory ended early: {trajectory.message}")
    return result


def run_deutsch_spin_batch(
    f: OracleId,
    y0: np.ndarray,
    measurement_time: Optional[float] = None,
    coupling: float = DEFAULT_COUPLING,
    pointer_width: float = DEFAULT_POINTER_WIDTH,
    dt: float = 1e-3,
    scheme: IntegrationScheme = IntegrationScheme.EULER
) -> Tuple[PointerBatchResult, List[OracleClass]]:
    """Deutsch verdicts for many initial pointer positions at once."""
    if measurement_time is None:
        measurement_time = default_measurement_time(coupling, pointer_width)
    state = SpinPilotWave.prepare(pointer=PointerState(0.0, pointer_width), coupling=coupling)
    state = evolve_through_gates(state, f)
    batch = integrate_pointer_batch(state, np.asarray(y0, dtype=float), measurement_time, dt, scheme)
    verdicts = [verdict_from_displacement(d) for d in batch.final - batch.initial]
    return batch, verdicts

"""Guidance dynamics of the pointer coordinate during the measurement interaction."""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import special

from models import (
    IntegrationScheme,
    InvalidInputError,
    NodeEncounterError,
    PointerTrajectory,
    TrajectoryStatus,
)
from .pilot_wave import (
    DATA_SIGNS,
    SpinPilotWave,
    log_component_densities,
    log_peak_density,
    measure_pointer,
)

logger = logging.getLogger(__name__)

# ρ below NODE_FLOOR · max ρ counts as a node
NODE_FLOOR = 1e-300
LOG_NODE_FLOOR = math.log(NODE_FLOOR)


def velocity_field(state: SpinPilotWave, y, t_elapsed: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorised j/ρ after ``t_elapsed`` of measurement.

    Returns:
        (velocity, ok) arrays; ok is False where the density is below the node floor
    """
    measured = measure_pointer(state, t_elapsed)
    logs = log_component_densities(measured, y)
    log_rho = special.logsumexp(logs, axis=0)
    ok = log_rho >= log_peak_density(measured) + LOG_NODE_FLOOR
    with np.errstate(invalid="ignore"):
        weights = np.exp(logs - log_rho)
    signs = DATA_SIGNS.reshape((4,) + (1,) * (np.ndim(logs) - 1))
    velocity = state.coupling * np.sum(signs * np.nan_to_num(weights), axis=0)
    return velocity, ok


def pointer_velocity(state: SpinPilotWave, y: float, t_elapsed: float) -> float:
    """
    dy/dt = g (Σ_{m=+} |c|²|φ|² - Σ_{m=-} |c|²|φ|²) / Σ |c|²|φ|² at (y, t).

    Raises:
        NodeEncounterError: ρ(y) is below the node floor
    """
    velocity, ok = velocity_field(state, float(y), t_elapsed)
    if not bool(ok):
        raise NodeEncounterError(f"Pointer density vanishes at y={y:.6g}", (float(y),), t_elapsed)
    return float(velocity)


def _step_count(t_max: float, dt: float) -> int:
    if not dt > 0:
        raise InvalidInputError(f"Step size must be positive, got {dt}")
    if t_max < 0:
        raise InvalidInputError(f"Integration time must be nonnegative, got {t_max}")
    return int(math.ceil(t_max / dt - 1e-12)) if t_max > 0 else 0


def integrate_pointer(
    state: SpinPilotWave,
    y0: float,
    t_max: float,
    dt: float,
    scheme: IntegrationScheme = IntegrationScheme.EULER,
    t_start: float = 0.0
) -> PointerTrajectory:
    """
    Integrate the pointer guidance equation from the start of the measurement.

    The interval is split into ceil(t_max/dt) equal steps so the run ends exactly at
    t_max. Node encounters end the trajectory with status ABORTED_NODE.

    Args:
        state: Pilot wave at the moment the measurement coupling switches on
        y0: Initial pointer position
        t_max: Measurement duration
        dt: Nominal step
        scheme: Euler (default) or RK4
        t_start: Clock value of the first sample

    Returns:
        PointerTrajectory
    """
    steps = _step_count(t_max, dt)
    trajectory = PointerTrajectory(dt=dt)
    trajectory.append(t_start, y0)
    if steps == 0:
        return trajectory

    h = t_max / steps
    y = float(y0)

    def v(position: float, elapsed: float) -> float:
        return pointer_velocity(state, position, elapsed)

    try:
        for k in range(steps):
            t = k * h
            if scheme is IntegrationScheme.RK4:
                k1 = v(y, t)
                k2 = v(y + 0.5 * h * k1, t + 0.5 * h)
                k3 = v(y + 0.5 * h * k2, t + 0.5 * h)
                k4 = v(y + h * k3, t + h)
                y = y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            else:
                y = y + h * v(y, t)
            trajectory.append(t_start + (k + 1) * h, y)
    except NodeEncounterError as e:
        logger.warning(f"⚠️  Pointer trajectory from y0={y0:.6g} aborted: {e}")
        trajectory.status = TrajectoryStatus.ABORTED_NODE
        trajectory.message = str(e)
    return trajectory


@dataclass
class PointerBatchResult:
    """Final positions of many pointer trajectories integrated together."""

    initial: np.ndarray
    final: np.ndarray
    final_velocity: np.ndarray
    ok: np.ndarray
    step: float

    @property
    def statuses(self):
        return [TrajectoryStatus.COMPLETE if flag else TrajectoryStatus.ABORTED_NODE for flag in self.ok]


def integrate_pointer_batch(
    state: SpinPilotWave,
    y0: np.ndarray,
    t_max: float,
    dt: float,
    scheme: IntegrationScheme = IntegrationScheme.EULER
) -> PointerBatchResult:
    """Vectorised integrate_pointer over an array of initial positions."""
    y = np.array(y0, dtype=float)
    initial = y.copy()
    ok = np.ones_like(y, dtype=bool)
    steps = _step_count(t_max, dt)
    h = t_max / steps if steps else 0.0

    def field(position, elapsed):
        velocity, good = velocity_field(state, position, elapsed)
        return np.where(good, velocity, 0.0), good

    for k in range(steps):
        t = k * h
        if scheme is IntegrationScheme.RK4:
            k1, g1 = field(y, t)
            k2, g2 = field(y + 0.5 * h * k1, t + 0.5 * h)
            k3, g3 = field(y + 0.5 * h * k2, t + 0.5 * h)
            k4, g4 = field(y + h * k3, t + h)
            increment = h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            good = g1 & g2 & g3 & g4
        else:
            k1, good = field(y, t)
            increment = h * k1
        ok &= good
        y = np.where(ok, y + increment, y)

    final_velocity, good = field(y, t_max)
    ok &= good
    aborted = int(np.count_nonzero(~ok))
    if aborted:
        logger.warning(f"⚠️  {aborted}/{len(y)} pointer trajectories hit the node floor")
    return PointerBatchResult(initial, y, final_velocity, ok, h)

"""Configuration-space trajectories co-evolved with the well coefficients."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from models import (
    CoefficientScheme,
    ConfigPoint,
    GateSchedule,
    IntegrationScheme,
    InvalidInputError,
    Trajectory2D,
    TrajectoryStatus,
    WellWaveFunction,
)
from .guidance import DEFAULT_GRADIENT_DELTA, gradient_field
from .schedule import CoefficientTimeline

logger = logging.getLogger(__name__)

_COMPLETE, _NODE, _BOUNDARY = 0, 1, 2
_STATUS = {
    _COMPLETE: TrajectoryStatus.COMPLETE,
    _NODE: TrajectoryStatus.ABORTED_NODE,
    _BOUNDARY: TrajectoryStatus.ABORTED_BOUNDARY,
}


@dataclass
class TrajectoryBatch:
    """
    Many trajectories driven by one coefficient timeline.

    ``paths`` has shape (steps + 1, N, 2) when recorded; samples after an abort repeat the
    last valid position and ``abort_step`` marks where each trajectory stopped (-1: never).
    """

    times: np.ndarray
    initial: np.ndarray
    final: np.ndarray
    status_codes: np.ndarray
    abort_step: np.ndarray
    dt: float
    paths: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return len(self.initial)

    @property
    def statuses(self) -> List[TrajectoryStatus]:
        return [_STATUS[int(code)] for code in self.status_codes]

    @property
    def completed(self) -> np.ndarray:
        return self.status_codes == _COMPLETE

    @property
    def abort_rate(self) -> float:
        return float(np.mean(~self.completed)) if self.size else 0.0

    def trajectory(self, index: int) -> Trajectory2D:
        """Single trajectory, truncated at its abort step."""
        if self.paths is None:
            raise InvalidInputError("Paths were not recorded for this batch")
        stop = self.abort_step[index]
        end = len(self.times) if stop < 0 else stop + 1
        code = int(self.status_codes[index])
        message = "" if code == _COMPLETE else f"{_STATUS[code].value} after t={self.times[end - 1]:.6g}"
        return Trajectory2D.from_arrays(self.times[:end], self.paths[:end, index, 0],
                                        self.paths[:end, index, 1], self.dt, _STATUS[code], message)


def _inside(x, y):
    return np.clip(x, 0.0, 1.0), np.clip(y, 0.0, 1.0)


def _outside(x, y):
    return (x <= 0.0) | (x >= 1.0) | (y <= 0.0) | (y >= 1.0)


def _velocity(coeffs, mass, x, y, delta, method):
    gx, gy, ok = gradient_field(coeffs, x, y, delta, method)
    return gx / mass, gy / mass, ok


def integrate_batch(
    timeline: CoefficientTimeline,
    points: np.ndarray,
    scheme: IntegrationScheme = IntegrationScheme.EULER,
    delta: float = DEFAULT_GRADIENT_DELTA,
    method: str = "finite_difference",
    record: bool = False,
    progress: bool = False
) -> TrajectoryBatch:
    """
    Integrate dx/dt = ∇S/m for an array of (x, y) starting points.

    Every trajectory shares the same coefficients at each step. A trajectory whose
    density falls below the node floor stops with ABORTED_NODE; a step that would
    leave the open box stops it with ABORTED_BOUNDARY. Stopped trajectories keep
    their last valid position.

    Args:
        timeline: Precomputed coefficients on the step grid
        points: Array of shape (N, 2)
        scheme: Euler or RK4 for the configuration
        delta: Finite-difference width of the phase gradient
        method: "finite_difference" or "analytic"
        record: Keep every intermediate position
        progress: Show a tqdm progress bar over the steps

    Returns:
        TrajectoryBatch
    """
    points = np.array(points, dtype=float).reshape(-1, 2)
    x, y = points[:, 0].copy(), points[:, 1].copy()
    n = len(points)
    codes = np.full(n, _COMPLETE, dtype=int)
    abort_step = np.full(n, -1, dtype=int)
    outside = _outside(x, y)
    codes[outside] = _BOUNDARY
    abort_step[outside] = 0
    paths = np.empty((timeline.steps + 1, n, 2)) if record else None
    if record:
        paths[0] = points
    mass = timeline.mass

    def field(coeffs, px, py):
        return _velocity(coeffs, mass, px, py, delta, method)

    for k in tqdm(range(timeline.steps), desc="trajectories", disable=not progress):
        active = codes == _COMPLETE
        h = timeline.step_size(k)
        c0 = timeline.coeffs[k]
        px, py = x[active], y[active]
        if scheme is IntegrationScheme.RK4:
            t = timeline.times[k]
            c_mid = timeline.at(t + 0.5 * h, k)
            c1 = timeline.coeffs[k + 1]
            k1x, k1y, g1 = field(c0, px, py)
            s2 = (px + 0.5 * h * k1x, py + 0.5 * h * k1y)
            k2x, k2y, g2 = field(c_mid, *_inside(*s2))
            s3 = (px + 0.5 * h * k2x, py + 0.5 * h * k2y)
            k3x, k3y, g3 = field(c_mid, *_inside(*s3))
            s4 = (px + h * k3x, py + h * k3y)
            k4x, k4y, g4 = field(c1, *_inside(*s4))
            nx = px + h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
            ny = py + h * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
            # a stage outside the box is a wall hit; the clipped evaluation there is discarded
            stage_exit = _outside(*s2) | _outside(*s3) | _outside(*s4)
            good = g1 & ((g2 & g3 & g4) | stage_exit)
        else:
            vx, vy, good = field(c0, px, py)
            nx, ny = px + h * vx, py + h * vy
            stage_exit = np.zeros_like(good)

        exits = good & (stage_exit | _outside(nx, ny))
        moved = good & ~exits
        indices = np.flatnonzero(active)
        x[indices[moved]] = nx[moved]
        y[indices[moved]] = ny[moved]
        codes[indices[~good]] = _NODE
        codes[indices[exits]] = _BOUNDARY
        abort_step[indices[~good | exits]] = k
        if record:
            paths[k + 1, :, 0] = x
            paths[k + 1, :, 1] = y

    aborted = int(np.count_nonzero(codes != _COMPLETE))
    if aborted:
        logger.warning(f"⚠️  {aborted}/{n} trajectories aborted "
                       f"({int(np.count_nonzero(codes == _NODE))} node, "
                       f"{int(np.count_nonzero(codes == _BOUNDARY))} boundary)")
    return TrajectoryBatch(np.asarray(timeline.times), points, np.column_stack([x, y]), codes,
                           abort_step, float(np.max(np.diff(timeline.times))) if timeline.steps else 0.0,
                           paths)


def integrate_trajectory(
    w0: WellWaveFunction,
    schedule: GateSchedule,
    p0: ConfigPoint,
    dt: float,
    scheme: IntegrationScheme = IntegrationScheme.EULER,
    coefficient_scheme: CoefficientScheme = CoefficientScheme.EXACT,
    delta: float = DEFAULT_GRADIENT_DELTA,
    method: str = "finite_difference",
    timeline: Optional[CoefficientTimeline] = None
) -> Trajectory2D:
    """
    Co-evolve the coefficients and one configuration through a schedule.

    Every step is recorded. Node and boundary aborts end the trajectory early with the
    matching status; the partial trajectory is returned.
    """
    if not p0.is_interior:
        raise InvalidInputError(f"Start point ({p0.x}, {p0.y}) must lie inside the box")
    if timeline is None:
        timeline = CoefficientTimeline.build(w0, schedule, dt, coefficient_scheme)
    batch = integrate_batch(timeline, np.array([p0.as_tuple()]), scheme, delta, method, record=True)
    trajectory = batch.trajectory(0)
    trajectory.dt = dt
    if not trajectory.is_complete:
        logger.info(f"Trajectory from ({p0.x:.3f}, {p0.y:.3f}) stopped: {trajectory.message}")
    return trajectory


def integrate_family(w0: WellWaveFunction, schedule: GateSchedule, starts: Sequence[ConfigPoint],
                     dt: float, scheme: IntegrationScheme = IntegrationScheme.EULER,
                     coefficient_scheme: CoefficientScheme = CoefficientScheme.EXACT,
                     delta: float = DEFAULT_GRADIENT_DELTA) -> List[Trajectory2D]:
    """Trajectories from several starting points sharing one coefficient timeline."""
    timeline = CoefficientTimeline.build(w0, schedule, dt, coefficient_scheme)
    points = np.array([p.as_tuple() for p in starts])
    batch = integrate_batch(timeline, points, scheme, delta, record=True)
    trajectories = [batch.trajectory(i) for i in range(batch.size)]
    for trajectory in trajectories:
        trajectory.dt = dt
    return trajectories


def estimate_period(trajectory: Trajectory2D, coordinate: str = "x") -> float:
    """
    Mean spacing of upward crossings of the coordinate's mean value.

    Raises:
        InvalidInputError: fewer than two crossings
    """
    times, xs, ys = trajectory.as_arrays()
    values = {"x": xs, "y": ys}.get(coordinate)
    if values is None:
        raise InvalidInputError(f"coordinate must be 'x' or 'y', got {coordinate!r}")
    centred = values - np.mean(values)
    rising = np.flatnonzero((centred[:-1] < 0.0) & (centred[1:] >= 0.0))
    if len(rising) < 2:
        raise InvalidInputError("Trajectory does not oscillate through at least two periods")
    fraction = -centred[rising] / (centred[rising + 1] - centred[rising])
    crossings = times[rising] + fraction * (times[rising + 1] - times[rising])
    return float(np.mean(np.diff(crossings)))


def convergence_deviation(run: Trajectory2D, refined: Trajectory2D) -> float:
    """Largest distance between a run and a finer run, compared at the coarse times."""
    times, xs, ys = run.as_arrays()
    fine_t, fine_x, fine_y = refined.as_arrays()
    end = min(times[-1], fine_t[-1])
    keep = times <= end + 1e-12
    dx = xs[keep] - np.interp(times[keep], fine_t, fine_x)
    dy = ys[keep] - np.interp(times[keep], fine_t, fine_y)
    return float(np.max(np.hypot(dx, dy)))

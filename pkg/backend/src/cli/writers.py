"""CSV writers for trajectories and densities."""

import csv
import logging
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from ensemble import fmt
from models import PointerTrajectory, Trajectory2D

logger = logging.getLogger(__name__)

CSV_DIGITS = 15
DENSITY_GRID_POINTS = 512


def _open(path: Path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="")


def write_pointer_csv(trajectory: PointerTrajectory, path: Path, digits: int = CSV_DIGITS) -> Path:
    """Header ``t,y``."""
    with _open(path) as f:
        writer = csv.writer(f)
        writer.writerow(["t", "y"])
        for t, y in zip(trajectory.times, trajectory.positions):
            writer.writerow([fmt(t, digits), fmt(y, digits)])
    logger.debug(f"Pointer trajectory written to {path}")
    return Path(path)


def write_trajectory_csv(trajectory: Trajectory2D, path: Path, digits: int = CSV_DIGITS) -> Path:
    """Header ``t,x,y``."""
    with _open(path) as f:
        writer = csv.writer(f)
        writer.writerow(["t", "x", "y"])
        for t, x, y in zip(trajectory.times, trajectory.xs, trajectory.ys):
            writer.writerow([fmt(t, digits), fmt(x, digits), fmt(y, digits)])
    return Path(path)


def write_trajectories_csv(trajectories: Sequence[Trajectory2D], path: Path,
                           digits: int = CSV_DIGITS) -> Path:
    """Long format, header ``traj_id,t,x,y``."""
    with _open(path) as f:
        writer = csv.writer(f)
        writer.writerow(["traj_id", "t", "x", "y"])
        for traj_id, trajectory in enumerate(trajectories):
            for t, x, y in zip(trajectory.times, trajectory.xs, trajectory.ys):
                writer.writerow([traj_id, fmt(t, digits), fmt(x, digits), fmt(y, digits)])
    logger.debug(f"{len(trajectories)} trajectories written to {path}")
    return Path(path)


def write_density_csv(density: Callable, path: Path, low: float = 0.0, high: float = 1.0,
                      points: int = DENSITY_GRID_POINTS, normalize: bool = False,
                      digits: int = CSV_DIGITS) -> Path:
    """Header ``x,rho`` on an evenly spaced grid, optionally rescaled to unit area."""
    grid = np.linspace(low, high, points)
    values = np.asarray(density(grid), dtype=float)
    if normalize:
        area = integrate.trapezoid(values, grid)
        if area > 0:
            values = values / area
    with _open(path) as f:
        writer = csv.writer(f)
        writer.writerow(["x", "rho"])
        for x, rho in zip(grid, values):
            writer.writerow([fmt(x, digits), fmt(rho, digits)])
    return Path(path)


def read_csv_columns(path: Path) -> dict:
    """Column name → float array (empty cells become NaN)."""
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    if not rows:
        return {}
    return {
        key: np.array([float(row[key]) if row[key] != "" else np.nan for row in rows])
        for key in rows[0]
        if key not in ("status", "outcome")
    }

"""Measurement-pointer wavepackets and pointer trajectories."""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Tuple

import numpy as np

from .errors import InvalidInputError


class TrajectoryStatus(Enum):
    """How an integration run ended."""
    COMPLETE = "complete"
    ABORTED_NODE = "aborted_node"
    ABORTED_BOUNDARY = "aborted_boundary"


@dataclass(frozen=True)
class PointerState:
    """
    Gaussian pointer packet φ(y) = (2πw²)^(-1/4) exp(-(y-c)²/(4w²)).

    |φ|² is a normal density with mean ``center`` and standard deviation ``width``.
    """

    center: float = 0.0
    width: float = 0.05

    def __post_init__(self):
        if not self.width > 0:
            raise InvalidInputError(f"Pointer width must be positive, got {self.width}")

    def shifted(self, displacement: float) -> "PointerState":
        return replace(self, center=self.center + displacement)

    def amplitude(self, y):
        y = np.asarray(y, dtype=float)
        w = self.width
        return (2.0 * np.pi * w * w) ** -0.25 * np.exp(-((y - self.center) ** 2) / (4.0 * w * w))

    def density(self, y):
        return np.abs(self.amplitude(y)) ** 2

    def log_density(self, y):
        """log|φ(y)|², finite far into the tails."""
        y = np.asarray(y, dtype=float)
        w = self.width
        return -0.5 * np.log(2.0 * np.pi * w * w) - ((y - self.center) ** 2) / (2.0 * w * w)

    def window(self, widths: float = 8.0) -> Tuple[float, float]:
        return self.center - widths * self.width, self.center + widths * self.width


@dataclass
class PointerTrajectory:
    """Time-ordered (t, y) samples of the pointer coordinate."""

    times: List[float] = field(default_factory=list)
    positions: List[float] = field(default_factory=list)
    dt: float = 0.0
    status: TrajectoryStatus = TrajectoryStatus.COMPLETE
    message: str = ""

    def append(self, t: float, y: float) -> None:
        if self.times and not t > self.times[-1]:
            raise InvalidInputError(f"Trajectory times must increase strictly ({t} after {self.times[-1]})")
        self.times.append(float(t))
        self.positions.append(float(y))

    def extend(self, other: "PointerTrajectory") -> None:
        """Append a later trajectory, skipping its first sample if it repeats our last one."""
        for t, y in zip(other.times, other.positions):
            if self.times and t <= self.times[-1]:
                continue
            self.append(t, y)
        if other.status is not TrajectoryStatus.COMPLETE:
            self.status = other.status
            self.message = other.message

    @property
    def final_position(self) -> float:
        return self.positions[-1]

    @property
    def displacement(self) -> float:
        return self.positions[-1] - self.positions[0]

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.times), np.asarray(self.positions)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "t": self.times,
            "y": self.positions,
            "dt": self.dt,
            "status": self.status.value,
            "message": self.message
        }

"""Data models for the two-qubit infinite-well system."""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import BoundaryExitError, InvalidInputError, NodeEncounterError, NormalizationError
from .pointer import TrajectoryStatus
from .quantum import OracleId

WELL_NORM_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class WellWaveFunction:
    """
    Coefficients (a, b, c, d) over ψ_m(x)ψ_n(y), (m, n) = (1,1), (1,2), (2,1), (2,2).

    The data qubit lives in x, the auxiliary qubit in y, so the coefficient order is the
    same |data, aux> order the gate algebra uses. Stepped (Euler) evolution may leave the
    norm slightly off one; ``norm_defect`` reports it and ``normalized`` removes it.
    """

    coeffs: np.ndarray
    mass: float = 1.0

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if coeffs.shape != (4,):
            raise InvalidInputError(f"Well state needs 4 coefficients, got {coeffs.shape[0]}")
        if not self.mass > 0:
            raise InvalidInputError(f"Mass must be positive, got {self.mass}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "mass", float(self.mass))

    @classmethod
    def from_product(cls, data: Sequence[complex], aux: Sequence[complex],
                     mass: float = 1.0) -> "WellWaveFunction":
        """Separable state (α₁β₁, α₁β₂, α₂β₁, α₂β₂)."""
        return cls(np.kron(np.asarray(data, dtype=complex), np.asarray(aux, dtype=complex)), mass)

    @classmethod
    def basis_state(cls, index: int, mass: float = 1.0) -> "WellWaveFunction":
        coeffs = np.zeros(4, dtype=np.complex128)
        coeffs[index] = 1.0
        return cls(coeffs, mass)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    @property
    def norm_defect(self) -> float:
        return abs(self.norm ** 2 - 1.0)

    def normalized(self) -> "WellWaveFunction":
        norm = self.norm
        if norm == 0.0:
            raise NormalizationError("Cannot normalise a zero well state")
        return replace(self, coeffs=self.coeffs / norm)

    def require_normalized(self, tolerance: float = WELL_NORM_TOLERANCE) -> "WellWaveFunction":
        if self.norm_defect > tolerance:
            raise NormalizationError(f"Well state norm² differs from 1 by {self.norm_defect:.3e}")
        return self

    def with_coeffs(self, coeffs: np.ndarray) -> "WellWaveFunction":
        return replace(self, coeffs=coeffs)

    def with_mass(self, mass: float) -> "WellWaveFunction":
        return replace(self, mass=mass)

    def data_probabilities(self) -> Tuple[float, float]:
        """Probabilities of the data qubit being in ψ_1 and ψ_2."""
        p = np.abs(self.coeffs) ** 2
        return float(p[0] + p[1]), float(p[2] + p[3])

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "coeffs": [[z.real, z.imag] for z in self.coeffs],
            "mass": self.mass
        }


@dataclass(frozen=True)
class ConfigPoint:
    """A configuration (x, y) in the unit box."""

    x: float
    y: float

    def __post_init__(self):
        if not (0.0 <= self.x <= 1.0 and 0.0 <= self.y <= 1.0):
            raise InvalidInputError(f"Configuration ({self.x}, {self.y}) is outside [0,1]²")

    @property
    def is_interior(self) -> bool:
        return 0.0 < self.x < 1.0 and 0.0 < self.y < 1.0

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


class SegmentKind(Enum):
    """Hamiltonian acting during one schedule segment."""
    FREE = "free"              # ω(Z⊗I + I⊗Z), global phase dropped
    XPERT_DATA = "xpert_data"  # δV(x): X on the data qubit
    XPERT_AUX = "xpert_aux"    # δV(y): X on the auxiliary qubit
    ORACLE = "oracle"          # oracle generator, U(x,y) for f2


@dataclass(frozen=True)
class GateSegment:
    """One constant-Hamiltonian interval of a gate schedule."""

    kind: SegmentKind
    duration: float
    oracle: Optional[OracleId] = None
    label: str = ""

    def __post_init__(self):
        if not self.duration > 0:
            raise InvalidInputError(f"Segment duration must be positive, got {self.duration}")
        if self.kind is SegmentKind.ORACLE and self.oracle is None:
            raise InvalidInputError("Oracle segments need an oracle id")

    def describe(self) -> str:
        name = self.kind.value if self.oracle is None else f"oracle({self.oracle.value})"
        return f"{name} for {self.duration:.6g}"


@dataclass(frozen=True)
class GateSchedule:
    """Ordered segments; the composed unitary is checked against the intended gate."""

    segments: Tuple[GateSegment, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    def __iter__(self):
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def __add__(self, other: "GateSchedule") -> "GateSchedule":
        name = " + ".join(n for n in (self.name, other.name) if n)
        return GateSchedule(self.segments + other.segments, name)

    @property
    def total_duration(self) -> float:
        return float(sum(segment.duration for segment in self.segments))

    def boundaries(self) -> List[float]:
        """Start times of every segment plus the end time."""
        times = [0.0]
        for segment in self.segments:
            times.append(times[-1] + segment.duration)
        return times


@dataclass
class Trajectory2D:
    """Time-ordered (t, x, y) samples of the configuration."""

    times: List[float] = field(default_factory=list)
    xs: List[float] = field(default_factory=list)
    ys: List[float] = field(default_factory=list)
    dt: float = 0.0
    status: TrajectoryStatus = TrajectoryStatus.COMPLETE
    message: str = ""

    def append(self, t: float, x: float, y: float) -> None:
        if self.times and not t > self.times[-1]:
            raise InvalidInputError(f"Trajectory times must increase strictly ({t} after {self.times[-1]})")
        self.times.append(float(t))
        self.xs.append(float(x))
        self.ys.append(float(y))

    @classmethod
    def from_arrays(cls, times: Iterable[float], xs: Iterable[float], ys: Iterable[float],
                    dt: float, status: TrajectoryStatus = TrajectoryStatus.COMPLETE,
                    message: str = "") -> "Trajectory2D":
        trajectory = cls(dt=dt, status=status, message=message)
        for t, x, y in zip(times, xs, ys):
            trajectory.append(t, x, y)
        return trajectory

    @property
    def final_point(self) -> Tuple[float, float]:
        return self.xs[-1], self.ys[-1]

    @property
    def is_complete(self) -> bool:
        return self.status is TrajectoryStatus.COMPLETE

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.asarray(self.times), np.asarray(self.xs), np.asarray(self.ys)

    def require_complete(self) -> "Trajectory2D":
        """Raise the abort as an exception; complete trajectories pass through."""
        where = (self.xs[-1], self.ys[-1]) if self.times else None
        when = self.times[-1] if self.times else None
        if self.status is TrajectoryStatus.ABORTED_NODE:
            raise NodeEncounterError(self.message or "Trajectory stopped at a node", where, when)
        if self.status is TrajectoryStatus.ABORTED_BOUNDARY:
            raise BoundaryExitError(self.message or "Trajectory left the box", where, when)
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "t": self.times,
            "x": self.xs,
            "y": self.ys,
            "dt": self.dt,
            "status": self.status.value,
            "message": self.message
        }

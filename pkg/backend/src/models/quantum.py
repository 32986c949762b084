"""Value types for qubit states, gates and their generators."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Tuple, Union

import numpy as np

from .errors import InvalidInputError, NormalizationError

NORM_TOLERANCE = 1e-12
UNITARY_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12


def _frozen_array(values: Union[np.ndarray, Iterable], ndim: int) -> np.ndarray:
    array = np.array(values, dtype=np.complex128)
    if array.ndim != ndim:
        raise InvalidInputError(f"Expected a {ndim}-dimensional array, got shape {array.shape}")
    array.setflags(write=False)
    return array


class OracleClass(Enum):
    """Deutsch classification of a binary function."""
    CONSTANT = "constant"
    BALANCED = "balanced"


class OracleId(Enum):
    """The four functions {0,1} -> {0,1}."""
    F0 = "f0"  # f(0)=0, f(1)=0
    F1 = "f1"  # f(0)=0, f(1)=1
    F2 = "f2"  # f(0)=1, f(1)=0
    F3 = "f3"  # f(0)=1, f(1)=1

    @property
    def table(self) -> Tuple[int, int]:
        """(f(0), f(1))."""
        return _ORACLE_TABLES[self]

    def __call__(self, x: int) -> int:
        return self.table[x]

    @classmethod
    def parse(cls, value: Union[str, "OracleId"]) -> "OracleId":
        """Accept 'f2', 'F2' or an OracleId."""
        if isinstance(value, OracleId):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            valid = ", ".join(o.value for o in cls)
            raise InvalidInputError(f"Unknown oracle {value!r}; expected one of {valid}") from None


_ORACLE_TABLES = {
    OracleId.F0: (0, 0),
    OracleId.F1: (0, 1),
    OracleId.F2: (1, 0),
    OracleId.F3: (1, 1),
}


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalised amplitudes in the computational basis (|data> ⊗ |aux> for dim 4)."""

    amps: np.ndarray

    def __post_init__(self):
        amps = _frozen_array(self.amps, 1)
        if amps.shape[0] not in (2, 4):
            raise InvalidInputError(f"State dimension must be 2 or 4, got {amps.shape[0]}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise NormalizationError(f"State norm {norm!r} differs from 1")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def normalized(cls, amps: Iterable[complex]) -> "StateVector":
        """Build a state after dividing by the norm."""
        array = np.array(amps, dtype=np.complex128)
        norm = np.linalg.norm(array)
        if norm == 0.0:
            raise NormalizationError("Cannot normalise the zero vector")
        return cls(array / norm)

    @classmethod
    def basis(cls, index: int, dim: int = 4) -> "StateVector":
        amps = np.zeros(dim, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def to_dict(self):
        """Convert to dictionary."""
        return {"amps": [[z.real, z.imag] for z in self.amps]}


@dataclass(frozen=True, eq=False)
class UnitaryGate:
    """Dense 2x2 or 4x4 unitary matrix."""

    matrix: np.ndarray
    name: str = ""

    def __post_init__(self):
        matrix = _frozen_array(self.matrix, 2)
        if matrix.shape not in ((2, 2), (4, 4)):
            raise InvalidInputError(f"Gate must be 2x2 or 4x4, got {matrix.shape}")
        defect = np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0])))
        if defect >= UNITARY_TOLERANCE:
            raise InvalidInputError(f"Gate {self.name or '<unnamed>'} is not unitary (defect {defect:.3e})")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dagger(self) -> "UnitaryGate":
        return UnitaryGate(self.matrix.conj().T, f"{self.name}†" if self.name else "")

    def __matmul__(self, other: "UnitaryGate") -> "UnitaryGate":
        return UnitaryGate(self.matrix @ other.matrix)


@dataclass(frozen=True, eq=False)
class HermitianGenerator:
    """Hamiltonian G applied for a duration T; the gate is exp(-i G T)."""

    matrix: np.ndarray
    duration: float
    name: str = ""

    def __post_init__(self):
        matrix = _frozen_array(self.matrix, 2)
        if matrix.shape[0] != matrix.shape[1]:
            raise InvalidInputError(f"Generator must be square, got {matrix.shape}")
        if np.max(np.abs(matrix - matrix.conj().T)) >= HERMITIAN_TOLERANCE:
            raise InvalidInputError(f"Generator {self.name or '<unnamed>'} is not Hermitian")
        if not self.duration > 0:
            raise InvalidInputError(f"Generator duration must be positive, got {self.duration}")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "duration", float(self.duration))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def rescaled(self, duration: float) -> "HermitianGenerator":
        """Same gate over a different duration (G·T held fixed)."""
        return HermitianGenerator(self.matrix * (self.duration / duration), duration, self.name)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = _frozen_array(self.matrix, 2)
        if matrix.shape not in ((2, 2), (4, 4)):
            raise InvalidInputError(f"Density matrix must be 2x2 or 4x4, got {matrix.shape}")
        if np.max(np.abs(matrix - matrix.conj().T)) >= HERMITIAN_TOLERANCE:
            raise InvalidInputError("Density matrix is not Hermitian")
        trace = np.trace(matrix)
        if abs(trace - 1.0) >= NORM_TOLERANCE:
            raise NormalizationError(f"Density matrix trace {trace.real:.15g} differs from 1")
        if np.min(np.linalg.eigvalsh(matrix)) < -NORM_TOLERANCE:
            raise InvalidInputError("Density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

"""Bell spin toy model: two spin qubits without position plus a 1D pointer."""

import logging
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import special, stats

from models import (
    HermitianGenerator,
    InvalidInputError,
    NormalizationError,
    OverlappingPacketsError,
    PointerState,
    UnitaryGate,
)

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12

# Z eigenvalue of the data qubit per basis index |00>, |01>, |10>, |11>.
DATA_SIGNS = np.array([1.0, 1.0, -1.0, -1.0])
SPIN_LABELS = ((+1, +1), (+1, -1), (-1, +1), (-1, -1))

TARGETS = ("data", "aux", "both")


@dataclass(frozen=True, eq=False)
class SpinPilotWave:
    """
    ψ_mn(y) = c_mn φ_mn(y): one coefficient and one pointer packet per spin pair (m, n).

    Components are stored in |data, aux> basis order; component k has spin labels
    SPIN_LABELS[k], m = +1 for |0>_d.
    """

    coefficients: np.ndarray
    pointers: Tuple[PointerState, ...]
    coupling: float = 1.0

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=np.complex128).reshape(-1)
        pointers = tuple(self.pointers)
        if coefficients.shape != (4,) or len(pointers) != 4:
            raise InvalidInputError("A spin pilot wave needs four coefficients and four pointer packets")
        norm = float(np.sum(np.abs(coefficients) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise NormalizationError(f"Spin coefficients have norm² {norm!r}")
        if not self.coupling > 0:
            raise InvalidInputError(f"Coupling must be positive, got {self.coupling}")
        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "pointers", pointers)

    @classmethod
    def prepare(cls, data: Sequence[complex] = (1.0, 0.0), aux: Sequence[complex] = (0.0, 1.0),
                pointer: Optional[PointerState] = None, coupling: float = 1.0) -> "SpinPilotWave":
        """Product state φ_0(y) d_m a_n with an unentangled pointer (default |0>_d |1>_a)."""
        pointer = pointer or PointerState()
        coefficients = np.kron(np.asarray(data, dtype=complex), np.asarray(aux, dtype=complex))
        return cls(coefficients, (pointer,) * 4, coupling)

    @property
    def pointer_entangled(self) -> bool:
        first = self.pointers[0]
        return any(p != first for p in self.pointers[1:])

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.coefficients) ** 2

    def data_probabilities(self) -> Tuple[float, float]:
        w = self.weights
        return float(w[0] + w[1]), float(w[2] + w[3])

    def centers(self) -> np.ndarray:
        return np.array([p.center for p in self.pointers])

    def widths(self) -> np.ndarray:
        return np.array([p.width for p in self.pointers])


def _expand(gate: UnitaryGate, target: Optional[str]) -> np.ndarray:
    if gate.dim == 4:
        return gate.matrix
    if target not in TARGETS:
        raise InvalidInputError(f"A single-qubit gate needs target in {TARGETS}, got {target!r}")
    eye = np.eye(2, dtype=np.complex128)
    if target == "data":
        return np.kron(gate.matrix, eye)
    if target == "aux":
        return np.kron(eye, gate.matrix)
    return np.kron(gate.matrix, gate.matrix)


def expand_generator(generator: HermitianGenerator, target: Optional[str] = None) -> np.ndarray:
    """Lift a single-qubit generator to the two-qubit space (sum for target 'both')."""
    if generator.dim == 4:
        return generator.matrix
    if target not in TARGETS:
        raise InvalidInputError(f"A single-qubit generator needs target in {TARGETS}, got {target!r}")
    eye = np.eye(2, dtype=np.complex128)
    data = np.kron(generator.matrix, eye)
    aux = np.kron(eye, generator.matrix)
    return {"data": data, "aux": aux, "both": data + aux}[target]


def apply_gate(state: SpinPilotWave, gate: UnitaryGate, target: Optional[str] = None) -> SpinPilotWave:
    """
    Transform the spin coefficients, leaving every pointer packet untouched.

    A gate may only mix components whose pointer packets coincide; otherwise the
    result would not be a single packet per component.
    """
    matrix = _expand(gate, target)
    for i, j in zip(*np.nonzero(np.abs(matrix) > 0.0)):
        if i != j and state.pointers[i] != state.pointers[j]:
            raise InvalidInputError(
                "Gate mixes spin components whose pointer packets differ; "
                "apply gates before the measurement interaction"
            )
    return replace(state, coefficients=matrix @ state.coefficients)


def measure_pointer(state: SpinPilotWave, duration: float) -> SpinPilotWave:
    """
    Evolve under H = -ig(Z⊗I)∂_y for ``duration``: packets of |0>_d move by +gΔt,
    packets of |1>_d by -gΔt. Coefficients are unchanged.
    """
    if duration < 0:
        raise InvalidInputError(f"Measurement duration must be nonnegative, got {duration}")
    if duration == 0:
        return state
    shift = state.coupling * duration
    pointers = tuple(p.shifted(sign * shift) for p, sign in zip(state.pointers, DATA_SIGNS))
    return replace(state, pointers=pointers)


def log_component_densities(state: SpinPilotWave, y) -> np.ndarray:
    """log(|c_k|² |φ_k(y)|²), shape (4,) + shape(y); -inf for empty components."""
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore"):
        log_weights = np.log(state.weights)
    logs = [lw + p.log_density(y) for lw, p in zip(log_weights, state.pointers)]
    return np.stack(logs)


def pointer_density(state: SpinPilotWave, y):
    """|ψ(y)|² = Σ_mn |c_mn|² |φ_mn(y)|²."""
    return np.exp(special.logsumexp(log_component_densities(state, y), axis=0))


def pointer_cdf(state: SpinPilotWave, y):
    """Cumulative distribution of the pointer density."""
    y = np.asarray(y, dtype=float)
    total = np.zeros_like(y)
    for weight, pointer in zip(state.weights, state.pointers):
        if weight > 0:
            total = total + weight * stats.norm.cdf(y, loc=pointer.center, scale=pointer.width)
    return total


def log_peak_density(state: SpinPilotWave) -> float:
    """log of the density maximum, estimated at the packet centres."""
    centers = state.centers()[state.weights > 0]
    return float(np.max(special.logsumexp(log_component_densities(state, centers), axis=0)))


def gate_current(state: SpinPilotWave, generator: HermitianGenerator, y: Iterable[float],
                 target: Optional[str] = None) -> np.ndarray:
    """
    Pointer velocity j/ρ generated by a gate Hamiltonian that acts on the spins only.

    With ψ(y) = φ(y) r, j/ρ = i(r†G†r - r†Gr), which vanishes for Hermitian G.
    """
    if state.pointer_entangled:
        raise InvalidInputError("Gate currents are defined for an unentangled pointer")
    matrix = expand_generator(generator, target)
    r = state.coefficients
    value = 1j * (np.vdot(r, matrix.conj().T @ r) - np.vdot(r, matrix @ r))
    return np.full(np.shape(np.asarray(y, dtype=float)), float(value.real))


def outcome_regions(state: SpinPilotWave, min_separation_widths: float = 4.0) -> Tuple[float, float]:
    """
    Centres of the |0>_d and |1>_d pointer packets after a measurement.

    Raises:
        OverlappingPacketsError: packets closer than ``min_separation_widths`` widths
    """
    centers = state.centers()
    plus = float(np.mean(centers[DATA_SIGNS > 0]))
    minus = float(np.mean(centers[DATA_SIGNS < 0]))
    width = float(np.max(state.widths()))
    if abs(plus - minus) < min_separation_widths * width:
        raise OverlappingPacketsError(
            f"Pointer packets are {abs(plus - minus) / width:.2f} widths apart; "
            f"need at least {min_separation_widths}"
        )
    return plus, minus

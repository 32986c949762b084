"""Fixed gates, rotations and the Deutsch oracles."""

import logging
from typing import Sequence

import numpy as np

from models import InvalidInputError, OracleClass, OracleId, StateVector, UnitaryGate

logger = logging.getLogger(__name__)

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)

AXIS_TOLERANCE = 1e-9


def identity(dim: int = 2) -> UnitaryGate:
    return UnitaryGate(np.eye(dim, dtype=np.complex128), "I")


def pauli_x() -> UnitaryGate:
    return UnitaryGate(X, "X")


def pauli_y() -> UnitaryGate:
    return UnitaryGate(Y, "Y")


def pauli_z() -> UnitaryGate:
    return UnitaryGate(Z, "Z")


def hadamard() -> UnitaryGate:
    """(1/√2)[[1, 1], [1, -1]]."""
    return UnitaryGate(H, "H")


def kron(*gates: UnitaryGate) -> UnitaryGate:
    """Tensor product, first factor acting on the data qubit."""
    matrix = np.array([[1.0]], dtype=np.complex128)
    for gate in gates:
        matrix = np.kron(matrix, gate.matrix)
    return UnitaryGate(matrix, "⊗".join(g.name for g in gates if g.name))


def apply_gate(gate: UnitaryGate, state: StateVector) -> StateVector:
    if gate.dim != state.dim:
        raise InvalidInputError(f"Gate of dimension {gate.dim} cannot act on a state of dimension {state.dim}")
    return StateVector(gate.matrix @ state.amps)


def rotation(axis: Sequence[float], theta: float) -> UnitaryGate:
    """
    R_n(θ) = cos(θ/2) I - i sin(θ/2) (n_x X + n_y Y + n_z Z).

    Args:
        axis: Unit 3-vector n
        theta: Rotation angle of the Bloch vector

    Returns:
        The rotation gate
    """
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,):
        raise InvalidInputError(f"Rotation axis must be a 3-vector, got shape {n.shape}")
    if abs(np.linalg.norm(n) - 1.0) > AXIS_TOLERANCE:
        raise InvalidInputError(f"Rotation axis must have unit length, got |n| = {np.linalg.norm(n):.12g}")
    generator = n[0] * X + n[1] * Y + n[2] * Z
    matrix = np.cos(theta / 2.0) * I2 - 1j * np.sin(theta / 2.0) * generator
    return UnitaryGate(matrix, f"R_n({theta:.6g})")


def rotation_x(theta: float) -> UnitaryGate:
    return rotation((1.0, 0.0, 0.0), theta)


def rotation_y(theta: float) -> UnitaryGate:
    return rotation((0.0, 1.0, 0.0), theta)


def rotation_z(theta: float) -> UnitaryGate:
    return rotation((0.0, 0.0, 1.0), theta)


def euler_zxz_hadamard() -> UnitaryGate:
    """H written as e^{iπ/2} R_z(π/2) R_x(π/2) R_z(π/2)."""
    quarter = np.pi / 2.0
    matrix = np.exp(1j * quarter) * (rotation_z(quarter).matrix @ rotation_x(quarter).matrix
                                     @ rotation_z(quarter).matrix)
    return UnitaryGate(matrix, "e^{iπ/2}RzRxRz")


def classify(f: OracleId) -> OracleClass:
    """Constant iff f(0) == f(1)."""
    f0, f1 = f.table
    return OracleClass.CONSTANT if f0 == f1 else OracleClass.BALANCED


def oracle_gate(f: OracleId) -> UnitaryGate:
    """
    U_f|x, y> = |x, y ⊕ f(x)>, i.e. blockdiag(X^{f(0)}, X^{f(1)}) in |00>,|01>,|10>,|11> order.
    """
    blocks = [X if bit else I2 for bit in f.table]
    matrix = np.zeros((4, 4), dtype=np.complex128)
    matrix[:2, :2] = blocks[0]
    matrix[2:, 2:] = blocks[1]
    return UnitaryGate(matrix, f"U_{f.value}")


def equal_up_to_global_phase(u: np.ndarray, v: np.ndarray, atol: float = 1e-10) -> bool:
    """True when u = e^{iα} v entry-wise to ``atol`` for some α."""
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != v.shape:
        return False
    overlap = np.vdot(v, u)
    if abs(overlap) == 0.0:
        return False
    phase = overlap / abs(overlap)
    return bool(np.max(np.abs(u - phase * v)) < atol)

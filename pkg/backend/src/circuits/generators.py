"""Hermitian generators whose time evolution produces the circuit gates."""

import logging
import math

import numpy as np
from scipy import linalg

from models import HermitianGenerator, InvalidInputError, OracleId, UnitaryGate
from .gates import H, I2, X

logger = logging.getLogger(__name__)

DEFAULT_HADAMARD_DURATION = 1.0
DEFAULT_ORACLE_DURATION = math.pi / 2.0


def propagator(matrix: np.ndarray, t: float) -> np.ndarray:
    """exp(-i M t) for Hermitian M, by eigendecomposition."""
    eigenvalues, eigenvectors = linalg.eigh(matrix)
    phases = np.exp(-1j * eigenvalues * t)
    return (eigenvectors * phases) @ eigenvectors.conj().T


def generator_unitary(generator: HermitianGenerator, t: float = None) -> UnitaryGate:
    """
    Evolve under the generator for time t (the full duration by default).

    Args:
        generator: Hamiltonian and nominal duration
        t: Evolution time; None means generator.duration

    Returns:
        exp(-i G t) as a gate
    """
    t = generator.duration if t is None else t
    return UnitaryGate(propagator(generator.matrix, t), f"exp(-i{generator.name}t)")


def hadamard_generator(duration: float = DEFAULT_HADAMARD_DURATION) -> HermitianGenerator:
    """H_Had with H_Had·T = (π/2)(H - I)."""
    return HermitianGenerator((math.pi / 2.0) * (H - I2) / duration, duration, "H_Had")


def hadamard_partial(a: float, duration: float = DEFAULT_HADAMARD_DURATION) -> UnitaryGate:
    """State of the Hadamard evolution a fraction a ∈ [0, 1] of the way through the gate."""
    if not 0.0 <= a <= 1.0:
        raise InvalidInputError(f"Gate fraction must lie in [0, 1], got {a}")
    generator = hadamard_generator(duration)
    return generator_unitary(generator, a * generator.duration)


def oracle_generator(f: OracleId, duration: float = DEFAULT_ORACLE_DURATION) -> HermitianGenerator:
    """
    H_oracle with T·H_oracle = blockdiag(δ_{1,f(0)}(π/2)(X - I), δ_{1,f(1)}(π/2)(X - I)).
    """
    block = (math.pi / 2.0) * (X - I2) / duration
    matrix = np.zeros((4, 4), dtype=np.complex128)
    f0, f1 = f.table
    if f0 == 1:
        matrix[:2, :2] = block
    if f1 == 1:
        matrix[2:, 2:] = block
    return HermitianGenerator(matrix, duration, f"H_oracle[{f.value}]")

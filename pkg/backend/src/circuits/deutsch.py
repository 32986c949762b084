"""Model-free Deutsch pipeline: evolution operator, final state, data-qubit readout."""

import logging
from typing import Tuple

import numpy as np

from models import DensityMatrix, InvalidInputError, OracleClass, OracleId, StateVector, UnitaryGate
from .gates import apply_gate, hadamard, identity, kron, oracle_gate

logger = logging.getLogger(__name__)

# |0>_d |1>_a
DEUTSCH_INPUT_INDEX = 1


def deutsch_evolution(f: OracleId) -> UnitaryGate:
    """D = (H⊗I) · U_f · (H⊗H)."""
    h = hadamard()
    gate = kron(h, identity()) @ oracle_gate(f) @ kron(h, h)
    return UnitaryGate(gate.matrix, f"D[{f.value}]")


def deutsch_final_state(f: OracleId) -> StateVector:
    return apply_gate(deutsch_evolution(f), StateVector.basis(DEUTSCH_INPUT_INDEX))


def density_matrix(state: StateVector) -> DensityMatrix:
    return DensityMatrix(np.outer(state.amps, state.amps.conj()))


def partial_trace_data(rho: DensityMatrix) -> DensityMatrix:
    """Trace out the auxiliary qubit of a 4x4 density matrix."""
    if rho.dim != 4:
        raise InvalidInputError(f"Partial trace needs a two-qubit density matrix, got {rho.dim}x{rho.dim}")
    reduced = np.einsum("ikjk->ij", rho.matrix.reshape(2, 2, 2, 2))
    return DensityMatrix(reduced)


def deutsch_readout(f: OracleId) -> Tuple[float, OracleClass]:
    """
    Probability of finding the data qubit in |1> after the circuit, and the verdict.

    Returns:
        (p1, verdict) where verdict is BALANCED iff p1 > 1/2
    """
    reduced = partial_trace_data(density_matrix(deutsch_final_state(f)))
    p1 = float(reduced.matrix[1, 1].real)
    verdict = OracleClass.BALANCED if p1 > 0.5 else OracleClass.CONSTANT
    logger.debug(f"Deutsch readout for {f.value}: p(|1>_d) = {p1:.3e} → {verdict.value}")
    return p1, verdict

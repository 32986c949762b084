"""Exact linear algebra for one- and two-qubit states, gates and generators."""

from .gates import (
    identity,
    pauli_x,
    pauli_y,
    pauli_z,
    hadamard,
    kron,
    apply_gate,
    rotation,
    rotation_x,
    rotation_y,
    rotation_z,
    euler_zxz_hadamard,
    classify,
    oracle_gate,
    equal_up_to_global_phase,
)
from .generators import (
    propagator,
    generator_unitary,
    hadamard_generator,
    hadamard_partial,
    oracle_generator,
    DEFAULT_HADAMARD_DURATION,
    DEFAULT_ORACLE_DURATION,
)
from .deutsch import (
    deutsch_evolution,
    deutsch_final_state,
    density_matrix,
    partial_trace_data,
    deutsch_readout,
)

__all__ = [
    'identity',
    'pauli_x',
    'pauli_y',
    'pauli_z',
    'hadamard',
    'kron',
    'apply_gate',
    'rotation',
    'rotation_x',
    'rotation_y',
    'rotation_z',
    'euler_zxz_hadamard',
    'classify',
    'oracle_gate',
    'equal_up_to_global_phase',
    'propagator',
    'generator_unitary',
    'hadamard_generator',
    'hadamard_partial',
    'oracle_generator',
    'DEFAULT_HADAMARD_DURATION',
    'DEFAULT_ORACLE_DURATION',
    'deutsch_evolution',
    'deutsch_final_state',
    'density_matrix',
    'partial_trace_data',
    'deutsch_readout'
]

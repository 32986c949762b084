"""Bell's spin toy model with a one-dimensional measurement pointer."""

from .pilot_wave import (
    SpinPilotWave,
    SPIN_LABELS,
    DATA_SIGNS,
    apply_gate,
    expand_generator,
    measure_pointer,
    pointer_density,
    pointer_cdf,
    gate_current,
    outcome_regions,
)
from .dynamics import (
    NODE_FLOOR,
    velocity_field,
    pointer_velocity,
    integrate_pointer,
    integrate_pointer_batch,
    PointerBatchResult,
)
from .deutsch import (
    SpinDeutschResult,
    deutsch_gate_sequence,
    default_measurement_time,
    evolve_through_gates,
    run_deutsch_spin,
    run_deutsch_spin_batch,
    verdict_from_displacement,
)

__all__ = [
    'SpinPilotWave',
    'SPIN_LABELS',
    'DATA_SIGNS',
    'apply_gate',
    'expand_generator',
    'measure_pointer',
    'pointer_density',
    'pointer_cdf',
    'gate_current',
    'outcome_regions',
    'NODE_FLOOR',
    'velocity_field',
    'pointer_velocity',
    'integrate_pointer',
    'integrate_pointer_batch',
    'PointerBatchResult',
    'SpinDeutschResult',
    'deutsch_gate_sequence',
    'default_measurement_time',
    'evolve_through_gates',
    'run_deutsch_spin',
    'run_deutsch_spin_batch',
    'verdict_from_displacement'
]

"""Two qubits in an infinite square well: x carries the data qubit, y the auxiliary qubit."""

from .basis import (
    eigenenergy,
    omega,
    free_period,
    basis_function,
    psi_at,
    psi_values,
    psi_derivatives,
    density,
    x_marginal_density,
    y_marginal_density,
    data_density,
)
from .potentials import (
    PotentialKind,
    ORACLE_A,
    ORACLE_B,
    ORACLE_C,
    delta_v,
    oracle_potential,
    oracle_potential_elements,
    perturbation_matrix_elements,
    standard_integrals,
    candidate_table,
    closed_form_candidate_table,
    solve_oracle_potential_constants,
)
from .schedule import (
    CoefficientTimeline,
    free_wait,
    free_schedule,
    segment_generator,
    evolve_coeffs,
    evolve_segment,
    evolve_schedule,
    hadamard_schedule,
    oracle_matched_mass,
    oracle_schedule,
    deutsch_schedule,
    schedule_unitary,
    intended_hadamard,
    check_schedule,
    check_oracle_schedule,
    aux_only,
)
from .guidance import (
    DEFAULT_GRADIENT_DELTA,
    phase_gradient,
    analytic_phase_gradient,
    gradient_field,
    guidance_velocity,
    quantum_potential,
    hamilton_jacobi_residual,
    plane_wave_gradient,
    local_manipulation_deviation,
    wrap_phase,
)
from .trajectories import (
    TrajectoryBatch,
    integrate_batch,
    integrate_trajectory,
    integrate_family,
    estimate_period,
    convergence_deviation,
)
from .measurement import (
    EnergyPointerState,
    WellDeutschResult,
    WellDeutschBatch,
    default_measurement_time,
    measure_energy_pointer,
    energy_pointer_velocity,
    verdict_from_energy_displacement,
    run_deutsch_well,
    run_deutsch_well_batch,
)

__all__ = [
    'eigenenergy',
    'omega',
    'free_period',
    'basis_function',
    'psi_at',
    'psi_values',
    'psi_derivatives',
    'density',
    'x_marginal_density',
    'y_marginal_density',
    'data_density',
    'PotentialKind',
    'ORACLE_A',
    'ORACLE_B',
    'ORACLE_C',
    'delta_v',
    'oracle_potential',
    'oracle_potential_elements',
    'perturbation_matrix_elements',
    'standard_integrals',
    'candidate_table',
    'closed_form_candidate_table',
    'solve_oracle_potential_constants',
    'CoefficientTimeline',
    'free_wait',
    'free_schedule',
    'segment_generator',
    'evolve_coeffs',
    'evolve_segment',
    'evolve_schedule',
    'hadamard_schedule',
    'oracle_matched_mass',
    'oracle_schedule',
    'deutsch_schedule',
    'schedule_unitary',
    'intended_hadamard',
    'check_schedule',
    'check_oracle_schedule',
    'aux_only',
    'DEFAULT_GRADIENT_DELTA',
    'phase_gradient',
    'analytic_phase_gradient',
    'gradient_field',
    'guidance_velocity',
    'quantum_potential',
    'hamilton_jacobi_residual',
    'plane_wave_gradient',
    'local_manipulation_deviation',
    'wrap_phase',
    'TrajectoryBatch',
    'integrate_batch',
    'integrate_trajectory',
    'integrate_family',
    'estimate_period',
    'convergence_deviation',
    'EnergyPointerState',
    'WellDeutschResult',
    'WellDeutschBatch',
    'default_measurement_time',
    'measure_energy_pointer',
    'energy_pointer_velocity',
    'verdict_from_energy_displacement',
    'run_deutsch_well',
    'run_deutsch_well_batch'
]

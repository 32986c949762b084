"""Ensembles of configurations: sampling, equivariance, Born frequencies and reports."""

from .sampling import spawn_generators, sample_density, histogram
from .statistics import (
    ks_statistic,
    ks_critical_value,
    grid_cdf,
    bin_probabilities,
    relative_entropy,
)
from .equivariance import (
    TransportModel,
    spin_measurement_model,
    well_schedule_model,
    equivariance_check,
    born_frequencies,
    spin_deutsch_ensemble,
    well_deutsch_ensemble,
    deutsch_correct_fraction,
)
from .report import write_ensemble_report, fmt

__all__ = [
    'spawn_generators',
    'sample_density',
    'histogram',
    'ks_statistic',
    'ks_critical_value',
    'grid_cdf',
    'bin_probabilities',
    'relative_entropy',
    'TransportModel',
    'spin_measurement_model',
    'well_schedule_model',
    'equivariance_check',
    'born_frequencies',
    'spin_deutsch_ensemble',
    'well_deutsch_ensemble',
    'deutsch_correct_fraction',
    'write_ensemble_report',
    'fmt'
]

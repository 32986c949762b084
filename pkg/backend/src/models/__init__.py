"""Data models for the pilot-wave simulator."""

from .errors import (
    PilotWaveError,
    InvalidInputError,
    NormalizationError,
    ConfigurationError,
    NodeEncounterError,
    BoundaryExitError,
    EnvelopeViolationError,
    QuadratureError,
    OverlappingPacketsError,
)
from .quantum import (
    OracleId,
    OracleClass,
    StateVector,
    UnitaryGate,
    HermitianGenerator,
    DensityMatrix,
)
from .pointer import PointerState, PointerTrajectory, TrajectoryStatus
from .well import (
    WellWaveFunction,
    ConfigPoint,
    SegmentKind,
    GateSegment,
    GateSchedule,
    Trajectory2D,
)
from .run_config import RunConfig, ModelKind, IntegrationScheme, CoefficientScheme
from .ensemble import EnsembleSpec, EnsembleResult

__all__ = [
    'PilotWaveError',
    'InvalidInputError',
    'NormalizationError',
    'ConfigurationError',
    'NodeEncounterError',
    'BoundaryExitError',
    'EnvelopeViolationError',
    'QuadratureError',
    'OverlappingPacketsError',
    'OracleId',
    'OracleClass',
    'StateVector',
    'UnitaryGate',
    'HermitianGenerator',
    'DensityMatrix',
    'PointerState',
    'PointerTrajectory',
    'TrajectoryStatus',
    'WellWaveFunction',
    'ConfigPoint',
    'SegmentKind',
    'GateSegment',
    'GateSchedule',
    'Trajectory2D',
    'RunConfig',
    'ModelKind',
    'IntegrationScheme',
    'CoefficientScheme',
    'EnsembleSpec',
    'EnsembleResult'
]

"""Domain exceptions raised by the simulator."""

from typing import Optional, Tuple


class PilotWaveError(Exception):
    """Base class for simulator errors."""


class InvalidInputError(PilotWaveError, ValueError):
    """An operation received an argument outside its domain."""


class NormalizationError(PilotWaveError, ValueError):
    """A state or density matrix is not normalised."""


class ConfigurationError(PilotWaveError, ValueError):
    """A run configuration is invalid."""


class NodeEncounterError(PilotWaveError, ArithmeticError):
    """The density fell below the node floor where the velocity is evaluated."""

    def __init__(self, message: str, position: Optional[Tuple[float, ...]] = None,
                 time: Optional[float] = None):
        super().__init__(message)
        self.position = position
        self.time = time


class BoundaryExitError(PilotWaveError, ArithmeticError):
    """An integration step would leave the box."""

    def __init__(self, message: str, position: Optional[Tuple[float, ...]] = None,
                 time: Optional[float] = None):
        super().__init__(message)
        self.position = position
        self.time = time


class EnvelopeViolationError(PilotWaveError, ValueError):
    """A density exceeded the declared rejection-sampling bound."""


class QuadratureError(PilotWaveError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


class OverlappingPacketsError(PilotWaveError, ValueError):
    """Pointer packets are too close together to define disjoint outcome regions."""

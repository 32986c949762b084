"""Validated run configuration shared by every command."""

import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .errors import ConfigurationError
from .quantum import OracleId


class ModelKind(Enum):
    """Physical realisation of the qubits."""
    SPIN = "spin"
    WELL = "well"


class IntegrationScheme(Enum):
    """Stepper used for configuration-space trajectories."""
    EULER = "euler"
    RK4 = "rk4"


class CoefficientScheme(Enum):
    """How well-model coefficients advance within a segment."""
    EXACT = "exact"   # segment exponential
    RK4 = "rk4"
    EULER = "euler"   # c' = c - i G c dt, renormalised at segment ends


class RunConfig(BaseModel):
    """Run configuration; every numeric field must be positive."""

    model_config = ConfigDict(use_enum_values=False, validate_assignment=True)

    model: ModelKind = ModelKind.SPIN
    oracle: Optional[OracleId] = None
    mass: float = Field(default=10.0, gt=0)
    dt: float = Field(default=0.01, gt=0)
    scheme: IntegrationScheme = IntegrationScheme.EULER
    coefficient_scheme: CoefficientScheme = CoefficientScheme.EXACT
    n: int = Field(default=1000, gt=0)
    seed: int = Field(default=20251019, ge=0)
    output_dir: Path = Path("outputs")
    emit_plots: bool = False

    # Spin model
    coupling: float = Field(default=1.0, gt=0)
    pointer_width: float = Field(default=0.05, gt=0)
    measurement_time: Optional[float] = Field(default=None, gt=0)   # None: derived from the model

    # Well model
    gradient_delta: float = Field(default=1e-4, gt=0)
    oracle_duration: float = Field(default=math.pi / 2, gt=0)
    measurement_coupling: float = Field(default=1.0, gt=0)

    # Ensemble
    histogram_bins: int = Field(default=64, gt=0)
    batch_size: int = Field(default=2048, gt=0)
    abort_threshold: float = Field(default=0.01, gt=0)
    progress: bool = False

    @field_validator("oracle", mode="before")
    @classmethod
    def _parse_oracle(cls, value: Any) -> Optional[OracleId]:
        if value is None or isinstance(value, OracleId):
            return value
        return OracleId.parse(value)

    @field_validator("model", "scheme", "coefficient_scheme", mode="before")
    @classmethod
    def _lower_enum(cls, value: Any) -> Any:
        if isinstance(value, str):
            return value.strip().lower()
        return value

    def require_oracle(self) -> OracleId:
        if self.oracle is None:
            raise ConfigurationError("An oracle (f0, f1, f2 or f3) is required for this command")
        return self.oracle

    @classmethod
    def from_layers(cls, *layers: Dict[str, Any]) -> "RunConfig":
        """
        Merge configuration layers, later layers winning, ignoring None values.

        Unknown keys are dropped so that shared YAML sections can hold settings for
        other parts of the program.
        """
        merged: Dict[str, Any] = {}
        for layer in layers:
            for key, value in (layer or {}).items():
                if value is not None and key in cls.model_fields:
                    merged[key] = value
        return cls(**merged)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        data = self.model_dump()
        for key, value in data.items():
            if isinstance(value, Enum):
                data[key] = value.value
            elif isinstance(value, Path):
                data[key] = str(value)
        return data

"""Ensemble specifications and results."""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .pointer import TrajectoryStatus


class EnsembleSpec(BaseModel):
    """
    How to draw an ensemble of initial configurations.

    ``initial_density`` None means quantum equilibrium (ρ = |ψ|²); otherwise it is a
    nonnegative, vectorised density over the same domain, with ``density_bound`` an upper
    bound used as the rejection-sampling envelope.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    size: int = Field(default=1000, ge=1)
    seed: int = Field(default=0, ge=0)
    initial_density: Optional[Callable[..., Any]] = None
    density_bound: Optional[float] = Field(default=None, gt=0)

    @property
    def is_equilibrium(self) -> bool:
        return self.initial_density is None


@dataclass
class EnsembleResult:
    """Outcome of transporting an ensemble; status counts always sum to N."""

    initial_positions: np.ndarray
    final_positions: np.ndarray
    statuses: List[TrajectoryStatus]
    outcomes: List[Optional[str]] = field(default_factory=list)
    histogram: Optional[np.ndarray] = None
    bin_edges: Optional[np.ndarray] = None
    ks_statistic: Optional[float] = None
    ks_initial: Optional[float] = None
    frequencies: Dict[str, float] = field(default_factory=dict)
    expected_frequencies: Dict[str, float] = field(default_factory=dict)
    abort_threshold: float = 0.01

    def __post_init__(self):
        if len(self.statuses) != len(self.final_positions):
            raise ValueError("Every sample needs exactly one status")
        if not self.outcomes:
            self.outcomes = [None] * len(self.statuses)

    @property
    def size(self) -> int:
        return len(self.statuses)

    @property
    def completed(self) -> np.ndarray:
        return np.array([s is TrajectoryStatus.COMPLETE for s in self.statuses], dtype=bool)

    def status_counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in TrajectoryStatus}
        for status in self.statuses:
            counts[status.value] += 1
        return counts

    @property
    def abort_rate(self) -> float:
        return 1.0 - float(np.mean(self.completed)) if self.size else 0.0

    @property
    def reliable(self) -> bool:
        return self.abort_rate <= self.abort_threshold

    def summary(self) -> str:
        """Get a summary string of the run."""
        lines = [
            f"Samples: {self.size}",
            f"Status counts: {self.status_counts()}",
            f"Abort rate: {self.abort_rate:.4f} ({'reliable' if self.reliable else 'UNRELIABLE'})",
        ]
        if self.ks_initial is not None:
            lines.append(f"KS statistic (initial): {self.ks_initial:.5f}")
        if self.ks_statistic is not None:
            lines.append(f"KS statistic (final): {self.ks_statistic:.5f}")
        for outcome, frequency in self.frequencies.items():
            expected = self.expected_frequencies.get(outcome)
            suffix = f" (expected {expected:.5f})" if expected is not None else ""
            lines.append(f"Frequency {outcome}: {frequency:.5f}{suffix}")
        return "\n".join(lines)

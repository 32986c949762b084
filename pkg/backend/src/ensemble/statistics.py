"""Distribution statistics: KS distances and coarse-grained relative entropy."""

import logging
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, stats

from models import InvalidInputError

logger = logging.getLogger(__name__)

GRID_POINTS = 4097


def ks_statistic(samples: np.ndarray, cdf: Callable) -> float:
    """One-sample Kolmogorov-Smirnov distance sup|F_N - F|."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise InvalidInputError("KS statistic needs at least one sample")
    return float(stats.kstest(samples, cdf).statistic)


def ks_critical_value(n: int, factor: float = 1.63) -> float:
    """1.63/√N is the α = 0.01 critical value."""
    return factor / math.sqrt(n)


def grid_cdf(density: Callable, low: float, high: float, points: int = GRID_POINTS) -> Callable:
    """
    Cumulative distribution of a (not necessarily normalised) 1D density, tabulated on a
    fine grid and interpolated linearly.
    """
    grid = np.linspace(low, high, points)
    values = np.asarray(density(grid), dtype=float)
    cumulative = integrate.cumulative_trapezoid(values, grid, initial=0.0)
    total = cumulative[-1]
    if not total > 0:
        raise InvalidInputError("Density integrates to zero on the grid")
    cumulative = cumulative / total

    def cdf(x):
        return np.interp(x, grid, cumulative, left=0.0, right=1.0)

    return cdf


def bin_probabilities(density: Callable, edges: np.ndarray, points_per_bin: int = 32) -> np.ndarray:
    """Probability mass of each 1D bin under a density (normalised over the edges)."""
    cdf = grid_cdf(density, float(edges[0]), float(edges[-1]),
                   points=(len(edges) - 1) * points_per_bin + 1)
    return np.diff(cdf(edges))


def bin_probabilities_2d(density: Callable, edges: Tuple[np.ndarray, np.ndarray],
                         points_per_bin: int = 8) -> np.ndarray:
    """Probability mass of each 2D bin, from the midpoint rule on a sub-grid."""
    ex, ey = edges
    fx = _subgrid(ex, points_per_bin)
    fy = _subgrid(ey, points_per_bin)
    gx, gy = np.meshgrid(fx, fy, indexing="ij")
    values = np.asarray(density(gx, gy), dtype=float)
    masses = values.reshape(len(ex) - 1, points_per_bin, len(ey) - 1, points_per_bin).sum(axis=(1, 3))
    return masses / masses.sum()


def _subgrid(edges: np.ndarray, per_bin: int) -> np.ndarray:
    fractions = (np.arange(per_bin) + 0.5) / per_bin
    return (edges[:-1, None] + np.diff(edges)[:, None] * fractions[None, :]).ravel()


def relative_entropy(positions: np.ndarray, psi_sq: Callable, bins: Optional[int] = None,
                     domain: Optional[Sequence[Tuple[float, float]]] = None) -> float:
    """
    Coarse-grained Σ_bins ρ̂ ln(ρ̂ / |ψ|²_bin) of the samples against |ψ|².

    One coordinate uses ``bins`` bins (default 64), two coordinates ``bins``×``bins``
    (default 32×32). Empty sample bins contribute nothing; a populated bin where |ψ|² has
    no mass gives +inf.
    """
    positions = np.asarray(positions, dtype=float)
    if positions.size == 0:
        raise InvalidInputError("Relative entropy needs samples")
    if positions.ndim == 1 or positions.shape[1] == 1:
        values = positions.reshape(-1)
        bins = bins or 64
        low, high = domain[0] if domain else (float(values.min()), float(values.max()))
        counts, edges = np.histogram(values, bins=bins, range=(low, high))
        expected = bin_probabilities(psi_sq, edges)
    else:
        bins = bins or 32
        ranges = domain or [(0.0, 1.0), (0.0, 1.0)]
        counts, ex, ey = np.histogram2d(positions[:, 0], positions[:, 1], bins=bins, range=ranges)
        expected = bin_probabilities_2d(psi_sq, (ex, ey))
    observed = counts / counts.sum()
    populated = observed > 0
    if np.any(expected[populated] <= 0):
        return math.inf
    value = float(np.sum(observed[populated] * np.log(observed[populated] / expected[populated])))
    return value

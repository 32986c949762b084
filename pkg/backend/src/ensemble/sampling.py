"""Rejection sampling of initial configurations."""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from models import EnsembleSpec, EnvelopeViolationError, InvalidInputError

logger = logging.getLogger(__name__)

Bounds = Sequence[Tuple[float, float]]

# proposals drawn per accepted sample still needed, per round
OVERSAMPLING = 4


def spawn_generators(seed: int, count: int) -> List[np.random.Generator]:
    """Independent child generators split from one seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(child) for child in children]


def _evaluate(density: Callable, proposals: np.ndarray) -> np.ndarray:
    if proposals.shape[1] == 1:
        return np.asarray(density(proposals[:, 0]), dtype=float)
    return np.asarray(density(*proposals.T), dtype=float)


def _draw(rng: np.random.Generator, density: Callable, bounds: np.ndarray, envelope: float,
          count: int) -> np.ndarray:
    accepted: List[np.ndarray] = []
    have = 0
    while have < count:
        batch = max(OVERSAMPLING * (count - have), 16)
        proposals = rng.uniform(bounds[:, 0], bounds[:, 1], size=(batch, len(bounds)))
        values = _evaluate(density, proposals)
        if np.any(values < 0):
            raise InvalidInputError("Density returned negative values")
        if np.any(values > envelope):
            raise EnvelopeViolationError(
                f"Density reached {float(np.max(values)):.6g}, above the envelope {envelope:.6g}"
            )
        keep = rng.uniform(0.0, envelope, size=batch) < values
        accepted.append(proposals[keep])
        have += int(np.count_nonzero(keep))
    return np.concatenate(accepted)[:count]


def sample_density(
    spec: EnsembleSpec,
    psi_sq: Callable,
    bounds: Bounds,
    envelope: float,
    batch_size: int = 2048
) -> np.ndarray:
    """
    Draw ``spec.size`` points from |ψ|² (or spec.initial_density) by rejection
    against a uniform envelope over ``bounds``.

    The draw is split into batches of ``batch_size``, each with its own child generator of
    ``spec.seed``; batches are concatenated in index order, so a seed fixes the result.

    Args:
        spec: Ensemble size, seed and optional custom density with its bound
        psi_sq: Equilibrium density, vectorised over one array per coordinate
        bounds: (low, high) per coordinate
        envelope: Upper bound of psi_sq on the domain
        batch_size: Samples per child generator

    Returns:
        Array of shape (N,) for one coordinate, (N, d) otherwise

    Raises:
        EnvelopeViolationError: the density exceeds the bound somewhere it was evaluated
    """
    limits = np.array(bounds, dtype=float).reshape(-1, 2)
    if np.any(limits[:, 1] <= limits[:, 0]):
        raise InvalidInputError(f"Empty sampling domain {bounds}")
    density = psi_sq if spec.is_equilibrium else spec.initial_density
    bound: Optional[float] = envelope if spec.is_equilibrium else spec.density_bound
    if bound is None:
        raise InvalidInputError("A custom initial density needs density_bound")

    counts = [min(batch_size, spec.size - start) for start in range(0, spec.size, batch_size)]
    generators = spawn_generators(spec.seed, len(counts))
    samples = np.concatenate([
        _draw(rng, density, limits, bound, count) for rng, count in zip(generators, counts)
    ])
    logger.debug(f"Sampled {spec.size} points in {len(counts)} batches (seed {spec.seed})")
    return samples[:, 0] if len(limits) == 1 else samples


def histogram(samples: np.ndarray, bins: int, domain: Tuple[float, float]) -> Tuple[np.ndarray, np.ndarray]:
    """Normalised density histogram."""
    return np.histogram(samples, bins=bins, range=domain, density=True)

"""
Ensemble transport: equivariance of |ψ|², Born-rule frequencies and Deutsch verdict
statistics for both models.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from circuits import classify
from models import (
    CoefficientScheme,
    EnsembleResult,
    EnsembleSpec,
    GateSchedule,
    IntegrationScheme,
    OracleId,
    PointerState,
    TrajectoryStatus,
    WellWaveFunction,
)
from spin_model import (
    SpinPilotWave,
    integrate_pointer_batch,
    measure_pointer,
    outcome_regions,
    pointer_cdf,
    pointer_density,
    run_deutsch_spin_batch,
)
from spin_model.deutsch import default_measurement_time as spin_measurement_time
from well_model import (
    CoefficientTimeline,
    density,
    integrate_batch,
    run_deutsch_well_batch,
    x_marginal_density,
)
from well_model.basis import density_bound
from .sampling import histogram, sample_density
from .statistics import grid_cdf, ks_statistic

logger = logging.getLogger(__name__)

POINTER_WINDOW_WIDTHS = 8.0


@dataclass
class TransportModel:
    """
    What an equivariance check needs from a model.

    ``transport`` maps initial samples to (final samples, statuses); ``marginal`` picks the
    coordinate compared against ``initial_cdf``/``final_cdf``.
    """

    name: str
    density: Callable
    bounds: List[Tuple[float, float]]
    envelope: float
    transport: Callable[[np.ndarray], Tuple[np.ndarray, List[TrajectoryStatus]]]
    initial_cdf: Callable
    final_cdf: Callable
    final_density: Callable
    marginal: Callable[[np.ndarray], np.ndarray]
    domain: Tuple[float, float]


def pointer_window(state: SpinPilotWave, duration: float = 0.0,
                   widths: float = POINTER_WINDOW_WIDTHS) -> Tuple[float, float]:
    """±8σ around every packet, before and after the measurement."""
    ends = []
    for s in (state, measure_pointer(state, duration)):
        for pointer in s.pointers:
            ends.extend(pointer.window(widths))
    return min(ends), max(ends)


def pointer_envelope(state: SpinPilotWave) -> float:
    """Σ_k |c_k|² peak(φ_k): an upper bound of the pointer density."""
    return float(sum(weight / (math.sqrt(2.0 * math.pi) * p.width)
                     for weight, p in zip(state.weights, state.pointers)))


def spin_measurement_model(state: SpinPilotWave, duration: float, dt: float,
                           scheme: IntegrationScheme = IntegrationScheme.EULER) -> TransportModel:
    """Pointer samples transported through the measurement interaction."""
    final = measure_pointer(state, duration)

    def transport(samples):
        batch = integrate_pointer_batch(state, samples, duration, dt, scheme)
        return batch.final, batch.statuses

    return TransportModel(
        name="spin measurement",
        density=lambda y: pointer_density(state, y),
        bounds=[pointer_window(state)],
        envelope=pointer_envelope(state) * 1.000001,
        transport=transport,
        initial_cdf=lambda y: pointer_cdf(state, y),
        final_cdf=lambda y: pointer_cdf(final, y),
        final_density=lambda y: pointer_density(final, y),
        marginal=lambda samples: np.asarray(samples, dtype=float),
        domain=pointer_window(state, duration),
    )


def well_schedule_model(w0: WellWaveFunction, schedule: GateSchedule, dt: float,
                        scheme: IntegrationScheme = IntegrationScheme.EULER,
                        coefficient_scheme: CoefficientScheme = CoefficientScheme.EXACT,
                        delta: float = 1e-4, progress: bool = False) -> TransportModel:
    """(x, y) samples transported through a gate schedule; the x-marginal is compared."""
    timeline = CoefficientTimeline.build(w0, schedule, dt, coefficient_scheme)
    final = timeline.final_state()

    def transport(samples):
        batch = integrate_batch(timeline, samples, scheme, delta, progress=progress)
        return batch.final, batch.statuses

    return TransportModel(
        name=f"well {schedule.name or 'schedule'}",
        density=lambda x, y: density(w0.coeffs, x, y),
        bounds=[(0.0, 1.0), (0.0, 1.0)],
        envelope=density_bound(w0.coeffs),
        transport=transport,
        initial_cdf=grid_cdf(lambda x: x_marginal_density(w0, x), 0.0, 1.0),
        final_cdf=grid_cdf(lambda x: x_marginal_density(final, x), 0.0, 1.0),
        final_density=lambda x: x_marginal_density(final, x),
        marginal=lambda samples: np.asarray(samples, dtype=float)[:, 0],
        domain=(0.0, 1.0),
    )


def equivariance_check(spec: EnsembleSpec, model: TransportModel, bins: int = 64,
                       abort_threshold: float = 0.01, batch_size: int = 2048) -> EnsembleResult:
    """
    Sample from the model's initial density, transport along trajectories and compare the
    final marginal against |ψ(·, t_final)|² by the KS distance.

    Aborted trajectories are excluded from the statistics; more than ``abort_threshold``
    of them flags the result unreliable.
    """
    initial = sample_density(spec, model.density, model.bounds, model.envelope, batch_size)
    final, statuses = model.transport(initial)
    completed = np.array([s is TrajectoryStatus.COMPLETE for s in statuses], dtype=bool)
    start_marginal = model.marginal(initial)
    end_marginal = model.marginal(final)[completed]

    counts, edges = histogram(end_marginal, bins, model.domain)
    result = EnsembleResult(
        initial_positions=initial,
        final_positions=final,
        statuses=statuses,
        histogram=counts,
        bin_edges=edges,
        ks_initial=ks_statistic(start_marginal, model.initial_cdf),
        ks_statistic=ks_statistic(end_marginal, model.final_cdf) if len(end_marginal) else None,
        abort_threshold=abort_threshold,
    )
    final_ks = "n/a" if result.ks_statistic is None else f"{result.ks_statistic:.4f}"
    logger.info(f"📊 Equivariance ({model.name}): KS {result.ks_initial:.4f} → {final_ks}, "
                f"abort rate {result.abort_rate:.4f}")
    if not result.reliable:
        logger.warning(f"⚠️  Abort rate {result.abort_rate:.2%} exceeds {abort_threshold:.2%}")
    return result


def born_frequencies(spec: EnsembleSpec, state: SpinPilotWave, duration: float, dt: float,
                     scheme: IntegrationScheme = IntegrationScheme.EULER,
                     batch_size: int = 2048) -> EnsembleResult:
    """
    Measure the data qubit with the pointer and count outcomes.

    Outcome "0" is the half-line nearer the |0>_d packet (+gΔt), "1" the other one.

    Raises:
        OverlappingPacketsError: packets less than four widths apart after the measurement
    """
    plus, minus = outcome_regions(measure_pointer(state, duration))
    midpoint = 0.5 * (plus + minus)
    model = spin_measurement_model(state, duration, dt, scheme)
    initial = sample_density(spec, model.density, model.bounds, model.envelope, batch_size)
    final, statuses = model.transport(initial)
    upper = "0" if plus > minus else "1"
    lower = "1" if upper == "0" else "0"
    outcomes = [upper if y > midpoint else lower for y in final]
    completed = [o for o, s in zip(outcomes, statuses) if s is TrajectoryStatus.COMPLETE]
    total = max(len(completed), 1)
    p0, p1 = state.data_probabilities()
    result = EnsembleResult(
        initial_positions=initial,
        final_positions=final,
        statuses=statuses,
        outcomes=outcomes,
        frequencies={"0": completed.count("0") / total, "1": completed.count("1") / total},
        expected_frequencies={"0": p0, "1": p1},
    )
    logger.info(f"📊 Born frequencies: {result.frequencies} (expected {result.expected_frequencies})")
    return result


def _verdict_frequencies(outcomes: List[Optional[str]], completed: np.ndarray) -> Dict[str, float]:
    kept = [o for o, ok in zip(outcomes, completed) if ok]
    total = max(len(kept), 1)
    return {"constant": kept.count("constant") / total, "balanced": kept.count("balanced") / total}


def spin_deutsch_ensemble(spec: EnsembleSpec, f: OracleId, coupling: float = 1.0,
                          pointer_width: float = 0.05, measurement_time: Optional[float] = None,
                          dt: float = 1e-3, scheme: IntegrationScheme = IntegrationScheme.EULER,
                          batch_size: int = 2048, abort_threshold: float = 0.01) -> EnsembleResult:
    """Deutsch verdicts for pointer positions drawn from |φ_0|² (or a custom density)."""
    f = OracleId.parse(f)
    if measurement_time is None:
        measurement_time = spin_measurement_time(coupling, pointer_width)
    pointer = PointerState(0.0, pointer_width)
    window = pointer.window(POINTER_WINDOW_WIDTHS)
    envelope = 1.000001 / (math.sqrt(2.0 * math.pi) * pointer_width)
    y0 = sample_density(spec, pointer.density, [window], envelope, batch_size)
    batch, verdicts = run_deutsch_spin_batch(f, y0, measurement_time, coupling, pointer_width, dt, scheme)
    result = EnsembleResult(
        initial_positions=y0,
        final_positions=batch.final,
        statuses=batch.statuses,
        outcomes=[v.value for v in verdicts],
        expected_frequencies={classify(f).value: 1.0},
        abort_threshold=abort_threshold,
    )
    result.frequencies = _verdict_frequencies(result.outcomes, result.completed)
    return result


def well_deutsch_ensemble(spec: EnsembleSpec, f: OracleId, mass: float = 10.0, dt: float = 0.01,
                          scheme: IntegrationScheme = IntegrationScheme.EULER,
                          coefficient_scheme: CoefficientScheme = CoefficientScheme.EXACT,
                          oracle_duration: float = math.pi / 2.0, pointer_width: float = 0.05,
                          coupling: float = 1.0, measurement_time: Optional[float] = None,
                          delta: float = 1e-4, batch_size: int = 2048, abort_threshold: float = 0.01,
                          progress: bool = False) -> EnsembleResult:
    """
    Deutsch verdicts for (x, y) drawn from |ψ(x, y, 0)|² (or a custom density) and pointer
    positions drawn from |φ_0|².
    """
    f = OracleId.parse(f)
    w0 = WellWaveFunction.basis_state(1, mass)
    points = sample_density(spec, lambda x, y: density(w0.coeffs, x, y),
                            [(0.0, 1.0), (0.0, 1.0)], density_bound(w0.coeffs), batch_size)
    pointer = PointerState(0.0, pointer_width)
    pointer_spec = EnsembleSpec(size=spec.size, seed=spec.seed + 1)
    z0 = sample_density(pointer_spec, pointer.density, [pointer.window(POINTER_WINDOW_WIDTHS)],
                        1.000001 / (math.sqrt(2.0 * math.pi) * pointer_width), batch_size)
    run = run_deutsch_well_batch(f, points, z0, mass, dt, scheme, coefficient_scheme, oracle_duration,
                                 pointer_width, coupling, measurement_time, delta, progress)
    statuses = [
        status if status is not TrajectoryStatus.COMPLETE or ok else TrajectoryStatus.ABORTED_NODE
        for status, ok in zip(run.batch.statuses, run.pointer_ok)
    ]
    result = EnsembleResult(
        initial_positions=points,
        final_positions=run.batch.final,
        statuses=statuses,
        outcomes=[v.value for v in run.verdicts],
        expected_frequencies={classify(f).value: 1.0},
        abort_threshold=abort_threshold,
    )
    result.frequencies = _verdict_frequencies(result.outcomes, result.completed)
    return result


def deutsch_correct_fraction(result: EnsembleResult, f: OracleId) -> float:
    """Share of completed trajectories whose verdict matches the oracle class."""
    return result.frequencies.get(classify(OracleId.parse(f)).value, 0.0)


"""The four subcommands. Each takes a validated RunConfig and returns an exit code."""

import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from circuits import classify
from ensemble import (
    born_frequencies,
    deutsch_correct_fraction,
    equivariance_check,
    relative_entropy,
    spin_deutsch_ensemble,
    spin_measurement_model,
    well_deutsch_ensemble,
    well_schedule_model,
    write_ensemble_report,
)
from models import (
    ConfigPoint,
    ConfigurationError,
    EnsembleResult,
    EnsembleSpec,
    InvalidInputError,
    ModelKind,
    OracleId,
    PointerState,
    RunConfig,
    Trajectory2D,
    WellWaveFunction,
)
from spin_model import SpinPilotWave, run_deutsch_spin
from well_model import (
    convergence_deviation,
    data_density,
    estimate_period,
    free_period,
    free_schedule,
    integrate_family,
    oracle_matched_mass,
    oracle_schedule,
    run_deutsch_well,
)
from .plots import plot_densities, plot_histogram, plot_pointer, plot_trajectories
from .verify import run_suites
from .writers import (
    write_density_csv,
    write_pointer_csv,
    write_trajectories_csv,
    write_trajectory_csv,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_ABORTS = 3

FREE_MASS = 1.0
FREE_PERIODS = 3
FREE_STARTS = tuple(round(0.1 * k, 1) for k in range(1, 10))
ORACLE_STARTS = tuple(round(0.1 * k, 1) for k in range(2, 9))

HALF = 1.0 / math.sqrt(2.0)
PLUS = (HALF, HALF)
MINUS = (HALF, -HALF)


def _banner(title: str) -> None:
    logger.info("=" * 60)
    logger.info(title)
    logger.info("=" * 60)


def _ensemble_spec(config: RunConfig, density: str, coordinates: int) -> EnsembleSpec:
    """Equilibrium, or a uniform density over the sampling box (non-equilibrium)."""
    if density == "equilibrium":
        return EnsembleSpec(size=config.n, seed=config.seed)
    if density == "uniform":
        if coordinates == 1:
            return EnsembleSpec(size=config.n, seed=config.seed,
                                initial_density=lambda y: np.ones_like(y), density_bound=1.0)
        return EnsembleSpec(size=config.n, seed=config.seed,
                            initial_density=lambda x, y: np.ones_like(x), density_bound=1.0)
    raise ConfigurationError(f"Unknown initial density {density!r}")


def _run_deutsch_ensemble(config: RunConfig, f: OracleId, density: str = "equilibrium") -> EnsembleResult:
    if config.model is ModelKind.SPIN:
        return spin_deutsch_ensemble(
            _ensemble_spec(config, density, 1), f, config.coupling, config.pointer_width,
            config.measurement_time, config.dt, config.scheme, config.batch_size,
            config.abort_threshold)
    return well_deutsch_ensemble(
        _ensemble_spec(config, density, 2), f, config.mass, config.dt, config.scheme,
        config.coefficient_scheme, config.oracle_duration, config.pointer_width,
        config.measurement_coupling, config.measurement_time, config.gradient_delta,
        config.batch_size, config.abort_threshold, config.progress)


def _write_verdict(path: Path, f: OracleId, verdict: str, fraction: float) -> None:
    path.write_text(
        f"oracle: {f.value}\n"
        f"expected: {classify(f).value}\n"
        f"verdict: {verdict}\n"
        f"ensemble_correct_fraction: {fraction:.6f}\n"
    )


def cmd_deutsch(config: RunConfig) -> int:
    """
    Full Deutsch pipeline in the chosen model: one representative trajectory plus an
    ensemble of N equilibrium starts.

    Exit 0 iff the representative verdict and every completed ensemble verdict match the
    oracle class; 3 when the ensemble aborted too often.
    """
    f = config.require_oracle()
    out = Path(config.output_dir) / f"deutsch_{config.model.value}_{f.value}"
    out.mkdir(parents=True, exist_ok=True)
    _banner(f"DEUTSCH ({config.model.value} model, oracle {f.value}, {classify(f).value})")

    if config.model is ModelKind.SPIN:
        run = run_deutsch_spin(f, 0.0, config.measurement_time, config.coupling,
                               config.pointer_width, config.dt, config.scheme)
        pointer_csv = write_pointer_csv(run.trajectory, out / "pointer.csv")
        trajectory_csv = None
    else:
        run = run_deutsch_well(f, mass=config.mass, dt=config.dt, scheme=config.scheme,
                               coefficient_scheme=config.coefficient_scheme,
                               oracle_duration=config.oracle_duration,
                               pointer_width=config.pointer_width,
                               coupling=config.measurement_coupling,
                               measurement_time=config.measurement_time,
                               delta=config.gradient_delta)
        trajectory_csv = write_trajectory_csv(run.trajectory, out / "trajectory.csv")
        pointer_csv = write_pointer_csv(run.pointer_trajectory, out / "pointer.csv")

    ensemble = _run_deutsch_ensemble(config, f)
    report_csv, _ = write_ensemble_report(ensemble, out / "ensemble.csv",
                                          f"Deutsch ensemble, {config.model.value} model, {f.value}")
    fraction = deutsch_correct_fraction(ensemble, f)
    _write_verdict(out / "verdict.txt", f, run.verdict.value, fraction)

    if config.emit_plots:
        plot_pointer(pointer_csv, out / "pointer.svg", f"Pointer, oracle {f.value}")
        if trajectory_csv is not None:
            plot_trajectories(trajectory_csv, out / "trajectory.svg", f"Configuration, oracle {f.value}")
        column = "y_final" if config.model is ModelKind.SPIN else "x_final"
        plot_histogram(report_csv, column, out / "ensemble_final.svg",
                       bins=config.histogram_bins, title=f"Final {column[0]} positions")

    logger.info(f"Verdict: {run.verdict.value} (expected {classify(f).value}); "
                f"ensemble correct fraction {fraction:.4f} over {int(ensemble.completed.sum())} runs")
    if not ensemble.reliable:
        logger.error(f"❌ Abort rate {ensemble.abort_rate:.2%} above {config.abort_threshold:.2%}")
        return EXIT_ABORTS
    return EXIT_OK if run.correct and fraction == 1.0 else EXIT_FAILURE


def _family(config: RunConfig, w0: WellWaveFunction, schedule, starts: Sequence[float],
            dt: float) -> List[Trajectory2D]:
    points = [ConfigPoint(s, s) for s in starts]
    return integrate_family(w0, schedule, points, dt, config.scheme, config.coefficient_scheme,
                            config.gradient_delta)


def _run_family(config: RunConfig, label: str, w0: WellWaveFunction, schedule,
                starts: Sequence[float], out: Path) -> List[Trajectory2D]:
    trajectories = _family(config, w0, schedule, starts, config.dt)
    refined = _family(config, w0, schedule, starts, config.dt / 2.0)
    deviation = max(convergence_deviation(a, b) for a, b in zip(trajectories, refined))
    logger.info(f"   {label}: {len(trajectories)} trajectories, max deviation at dt/2 {deviation:.3e}")
    csv_path = write_trajectories_csv(trajectories, out / f"trajectories_{label}.csv")
    if config.emit_plots:
        plot_trajectories(csv_path, out / f"trajectories_{label}.svg", f"{label} trajectories")
    return trajectories


def _free_family(config: RunConfig, out: Path) -> List[Trajectory2D]:
    _banner("FREE EVOLUTION (|+>|->, m = 1)")
    w0 = WellWaveFunction.from_product(PLUS, MINUS, FREE_MASS)
    period = free_period(FREE_MASS)
    trajectories = _run_family(config, "free", w0, free_schedule(FREE_PERIODS * period),
                               FREE_STARTS, out)
    for start, trajectory in zip(FREE_STARTS, trajectories):
        try:
            estimate = estimate_period(trajectory, "x")
        except InvalidInputError:
            logger.debug(f"   x0 = {start}: no full oscillation")
            continue
        logger.info(f"   x0 = {start}: period {estimate:.5f} (expected {period:.5f}, "
                    f"{abs(estimate - period) / period:.2%} off)")
    return trajectories


def _oracle_family(config: RunConfig, out: Path) -> List[Trajectory2D]:
    _banner(f"ORACLE f2 (|+>|->, m = {config.mass:g})")
    w0 = WellWaveFunction.from_product(PLUS, MINUS, config.mass)
    schedule = oracle_schedule(OracleId.F2, config.oracle_duration)
    trajectories = _run_family(config, "oracle", w0, schedule, ORACLE_STARTS, out)
    y_drift = max(float(np.max(np.abs(np.asarray(t.ys) - t.ys[0]))) for t in trajectories)
    logger.info(f"   max |y(t) - y0| during the oracle: {y_drift:.3e}")
    return trajectories


def cmd_trajectories(config: RunConfig, mode: str = "both") -> int:
    """Free-evolution and oracle trajectory families, data densities and a dt/2 check."""
    if mode not in ("free", "oracle", "both"):
        raise ConfigurationError(f"mode must be free, oracle or both, got {mode!r}")
    out = Path(config.output_dir) / "trajectories"
    out.mkdir(parents=True, exist_ok=True)

    trajectories: List[Trajectory2D] = []
    if mode in ("free", "both"):
        trajectories += _free_family(config, out)
    if mode in ("oracle", "both"):
        trajectories += _oracle_family(config, out)

    plus_csv = write_density_csv(lambda x: data_density(+1, x), out / "density_plus.csv")
    minus_csv = write_density_csv(lambda x: data_density(-1, x), out / "density_minus.csv")
    if config.emit_plots:
        plot_densities([plus_csv, minus_csv], out / "densities.svg", ["|+>", "|->"],
                       "Data-qubit densities")

    aborted = sum(not t.is_complete for t in trajectories)
    if aborted:
        logger.warning(f"⚠️  {aborted}/{len(trajectories)} trajectories stopped early")
    if trajectories and aborted / len(trajectories) > config.abort_threshold:
        return EXIT_ABORTS
    return EXIT_OK


def _equivariance(config: RunConfig, spec: EnsembleSpec):
    if config.model is ModelKind.SPIN:
        state = SpinPilotWave.prepare(PLUS, pointer=PointerState(0.0, config.pointer_width),
                                      coupling=config.coupling)
        model = spin_measurement_model(state, config.measurement_time, config.dt, config.scheme)
    else:
        matched = oracle_matched_mass(config.oracle_duration)
        if not math.isclose(config.mass, matched, rel_tol=1e-9):
            logger.warning(f"⚠️  U(x, y) carries |ψ|² along the trajectories only at m = {matched:.6f}; "
                           f"expect a large final KS at m = {config.mass:g}")
        w0 = WellWaveFunction.from_product(PLUS, MINUS, config.mass)
        model = well_schedule_model(w0, oracle_schedule(OracleId.F2, config.oracle_duration),
                                    config.dt, config.scheme, config.coefficient_scheme,
                                    config.gradient_delta, config.progress)
    result = equivariance_check(spec, model, config.histogram_bins, config.abort_threshold,
                                config.batch_size)
    final = model.marginal(result.final_positions)[result.completed]
    if len(final):
        entropy = relative_entropy(final, model.final_density, config.histogram_bins, [model.domain])
        logger.info(f"📊 Relative entropy of the final marginal: {entropy:.5f}")
    return result


def cmd_ensemble(config: RunConfig, experiment: str = "equivariance", density: str = "equilibrium",
                 p0: float = 0.3) -> int:
    """
    Ensemble experiments: equivariance, Born frequencies (spin model) or Deutsch verdict
    statistics, optionally from a uniform non-equilibrium start.
    """
    out = Path(config.output_dir) / f"ensemble_{experiment}_{config.model.value}"
    _banner(f"ENSEMBLE {experiment} ({config.model.value} model, N = {config.n})")

    oracle: Optional[OracleId] = None
    if experiment == "equivariance":
        result = _equivariance(config, EnsembleSpec(size=config.n, seed=config.seed))
    elif experiment == "born":
        if config.model is not ModelKind.SPIN:
            raise ConfigurationError("Born frequencies are measured with the spin-model pointer")
        if not 0.0 <= p0 <= 1.0:
            raise ConfigurationError(f"p0 must lie in [0, 1], got {p0}")
        state = SpinPilotWave.prepare((math.sqrt(p0), math.sqrt(1.0 - p0)),
                                      pointer=PointerState(0.0, config.pointer_width),
                                      coupling=config.coupling)
        result = born_frequencies(EnsembleSpec(size=config.n, seed=config.seed), state,
                                  config.measurement_time, config.dt, config.scheme, config.batch_size)
        result.abort_threshold = config.abort_threshold
    elif experiment == "deutsch":
        oracle = config.require_oracle()
        result = _run_deutsch_ensemble(config, oracle, density)
    else:
        raise ConfigurationError(f"Unknown experiment {experiment!r}")

    report_csv, _ = write_ensemble_report(result, out / "report.csv",
                                          f"{experiment} ensemble, {config.model.value} model")
    if config.emit_plots:
        column = "y_final" if config.model is ModelKind.SPIN else "x_final"
        plot_histogram(report_csv, column, out / "histogram.svg", bins=config.histogram_bins,
                       title=f"{experiment}: final {column[0]}")

    if not result.reliable:
        logger.error(f"❌ Abort rate {result.abort_rate:.2%} above {config.abort_threshold:.2%}")
        return EXIT_ABORTS
    if oracle is not None and deutsch_correct_fraction(result, oracle) < 1.0:
        logger.error("❌ Some completed trajectories gave the wrong verdict")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_verify(config: RunConfig, tamper_a: float = 0.0) -> int:
    """All verification suites; exit 0 iff every suite passes."""
    _banner("VERIFY")
    results = run_suites(config.seed, tamper_a)
    logger.info("-" * 60)
    for result in results:
        mark = "✅ PASS" if result.passed else "❌ FAIL"
        logger.info(f"{mark}  {result.name:<16} {result.detail}")
    logger.info("-" * 60)
    passed = sum(r.passed for r in results)
    logger.info(f"{passed}/{len(results)} suites passed")
    return EXIT_OK if passed == len(results) else EXIT_FAILURE

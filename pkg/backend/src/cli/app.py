"""Argument parsing and dispatch for the ``pilotwave`` command."""

import argparse
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from models import ConfigurationError, InvalidInputError, ModelKind, PilotWaveError, RunConfig
from spin_model.deutsch import default_measurement_time as spin_measurement_time
from utils import load_config, load_config_file, setup_logger
from well_model import default_measurement_time as well_measurement_time
from .commands import (
    EXIT_FAILURE,
    EXIT_USAGE,
    cmd_deutsch,
    cmd_ensemble,
    cmd_trajectories,
    cmd_verify,
)

logger = logging.getLogger(__name__)

ORACLES = ("f0", "f1", "f2", "f3")
RUN_FIELDS = ("model", "oracle", "mass", "dt", "scheme", "coefficient_scheme", "n", "seed",
              "output_dir", "emit_plots", "progress")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=["spin", "well"], help="Qubit realisation (default spin)")
    parser.add_argument("--oracle", choices=ORACLES, help="Oracle function")
    parser.add_argument("--mass", type=float, help="Particle mass in the well")
    parser.add_argument("--dt", type=float, help="Integration step")
    parser.add_argument("--scheme", choices=["euler", "rk4"], help="Trajectory stepper")
    parser.add_argument("--coefficient-scheme", dest="coefficient_scheme",
                        choices=["exact", "rk4", "euler"], help="Well coefficient stepper")
    parser.add_argument("--n", type=int, help="Ensemble size")
    parser.add_argument("--seed", type=int, help="Random seed")
    parser.add_argument("--output-dir", dest="output_dir", type=Path, help="Output directory")
    parser.add_argument("--emit-plots", dest="emit_plots", action="store_true", default=None,
                        help="Write SVG plots next to the CSV files")
    parser.add_argument("--progress", action="store_true", default=None, help="Show progress bars")
    parser.add_argument("--config", type=Path, help="Flat YAML file of RunConfig fields")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pilotwave",
        description="Pilot-wave trajectories of the Deutsch algorithm (spin and infinite-well qubits)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    deutsch = sub.add_parser("deutsch", help="Run the full Deutsch algorithm")
    _common(deutsch)

    trajectories = sub.add_parser("trajectories", help="Free and oracle trajectory families (well)")
    _common(trajectories)
    trajectories.add_argument("--mode", choices=["free", "oracle", "both"], default="both")

    ensemble = sub.add_parser("ensemble", help="Equivariance, Born or Deutsch ensemble statistics")
    _common(ensemble)
    ensemble.add_argument("--experiment", choices=["equivariance", "born", "deutsch"],
                          default="equivariance")
    ensemble.add_argument("--density", choices=["equilibrium", "uniform"], default="equilibrium",
                          help="Initial ensemble density for the deutsch experiment")
    ensemble.add_argument("--p0", type=float, default=0.3,
                          help="Probability of |0> for the Born experiment's data qubit")

    verify = sub.add_parser("verify", help="Run every verification suite")
    _common(verify)
    verify.add_argument("--tamper-a", dest="tamper_a", type=float, default=0.0,
                        help="Relative perturbation of the oracle constant A (suite must fail)")
    return parser


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Layer built-in defaults, the YAML defaults, a --config file and the flags."""
    settings = load_config()
    flags: Dict[str, Any] = {field: getattr(args, field, None) for field in RUN_FIELDS}
    file_layer: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    model = flags["model"] or file_layer.get("model") or "spin"
    run = RunConfig.from_layers(settings.defaults_for(str(model)), file_layer, flags)
    if run.measurement_time is None:
        run.measurement_time = (
            well_measurement_time(run.measurement_coupling, run.pointer_width)
            if run.model is ModelKind.WELL
            else spin_measurement_time(run.coupling, run.pointer_width)
        )
    return run


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0

    settings = load_config()
    setup_logger("", settings.log_level)
    if args.command == "trajectories" and args.model is None:
        args.model = "well"
    try:
        run_config = build_run_config(args)
    except (ValidationError, ValueError, OSError) as e:
        logger.error(f"❌ Invalid configuration: {e}")
        return EXIT_USAGE

    setup_logger("", settings.log_level, Path(run_config.output_dir) / "logs", args.command)
    logger.debug(f"Run configuration: {run_config.to_dict()}")
    try:
        if args.command == "deutsch":
            return cmd_deutsch(run_config)
        if args.command == "trajectories":
            return cmd_trajectories(run_config, args.mode)
        if args.command == "ensemble":
            return cmd_ensemble(run_config, args.experiment, args.density, args.p0)
        return cmd_verify(run_config, args.tamper_a)
    except (ConfigurationError, InvalidInputError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except PilotWaveError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_FAILURE

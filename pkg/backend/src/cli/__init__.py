"""Command-line front end: deutsch, trajectories, ensemble and verify."""

from .app import build_parser, main
from .commands import (
    EXIT_ABORTS,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    cmd_deutsch,
    cmd_ensemble,
    cmd_trajectories,
    cmd_verify,
)
from .verify import SuiteResult, run_suites

__all__ = [
    'build_parser',
    'main',
    'EXIT_OK',
    'EXIT_FAILURE',
    'EXIT_USAGE',
    'EXIT_ABORTS',
    'cmd_deutsch',
    'cmd_ensemble',
    'cmd_trajectories',
    'cmd_verify',
    'SuiteResult',
    'run_suites'
]

"""Utility modules for the simulator."""

from .config import load_config, load_config_file, Config
from .logger import parse_level, setup_logger

__all__ = [
    'load_config',
    'load_config_file',
    'Config',
    'setup_logger',
    'parse_level'
]

"""Logging setup for the simulator."""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

CONSOLE_FORMAT = '%(asctime)s | %(levelname)-8s | %(message)s'
FILE_FORMAT = '%(asctime)s | %(name)s | %(levelname)-8s | %(funcName)s:%(lineno)d | %(message)s'

# Chatty at DEBUG, never useful in a run log
QUIET_LOGGERS = ("matplotlib", "PIL")


def parse_level(log_level: str) -> int:
    """Numeric level for a name such as "debug"; unknown names fall back to INFO."""
    level = logging.getLevelName(str(log_level).strip().upper())
    return level if isinstance(level, int) else logging.INFO


def setup_logger(
    name: str = "pilotwave",
    log_level: str = "INFO",
    log_dir: Optional[Path] = None,
    run_label: str = "run"
) -> logging.Logger:
    """
    Attach a console handler and, with ``log_dir``, a DEBUG file handler.

    Library modules log through ``logging.getLogger(__name__)``, so the CLI configures the
    root logger (name ``""``). Calling this again replaces and closes earlier handlers.

    Args:
        name: Logger name
        log_level: Console level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory for the run log
        run_label: Prefix of the log file name

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    console_level = parse_level(log_level)

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT, datefmt='%H:%M:%S'))
    logger.addHandler(console_handler)

    if log_dir:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / f"{run_label}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))
        logger.addHandler(file_handler)

    logger.setLevel(logging.DEBUG if log_dir else console_level)
    for noisy in QUIET_LOGGERS:
        logging.getLogger(noisy).setLevel(logging.WARNING)
    return logger

"""Ensemble report: one CSV row per sample plus a summary text block."""

import csv
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

import numpy as np

from models import EnsembleResult

logger = logging.getLogger(__name__)

REPORT_HEADER = ["sample_id", "x0", "y0", "x_final", "y_final", "status", "outcome"]


def fmt(value: Optional[float], digits: int = 15) -> str:
    """Fixed significant digits; empty for missing values."""
    if value is None:
        return ""
    return f"{float(value):.{digits}g}"


def _xy(positions: np.ndarray, index: int) -> Tuple[Optional[float], Optional[float]]:
    """Split a sample into (x, y); one-coordinate samples are pointer positions y."""
    row = positions[index]
    if np.ndim(row) == 0:
        return None, float(row)
    return float(row[0]), float(row[1])


def report_rows(result: EnsembleResult, digits: int = 15) -> Iterable[List[str]]:
    initial = np.asarray(result.initial_positions)
    final = np.asarray(result.final_positions)
    for i, (status, outcome) in enumerate(zip(result.statuses, result.outcomes)):
        x0, y0 = _xy(initial, i)
        x1, y1 = _xy(final, i)
        yield [str(i), fmt(x0, digits), fmt(y0, digits), fmt(x1, digits), fmt(y1, digits),
               status.value, outcome or ""]


def write_ensemble_report(result: EnsembleResult, path: Path, title: str = "",
                          digits: int = 15) -> Tuple[Path, Path]:
    """
    Write ``path`` (CSV) and ``path`` with a .txt suffix (summary).

    Returns:
        (csv path, summary path)
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(REPORT_HEADER)
        writer.writerows(report_rows(result, digits))

    summary_path = path.with_suffix(".txt")
    lines = []
    if title:
        lines += [title, "=" * len(title)]
    lines.append(result.summary())
    summary_path.write_text("\n".join(lines) + "\n")
    logger.info(f"💾 Ensemble report saved to: {path}")
    return path, summary_path

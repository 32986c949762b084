"""SVG plots drawn from already-written CSV files."""

import logging
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .writers import read_csv_columns  # noqa: E402

logger = logging.getLogger(__name__)


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    logger.info(f"🖼️  Plot saved to: {path}")
    return path


def plot_pointer(csv_path: Path, svg_path: Path, title: str = "") -> Path:
    data = read_csv_columns(csv_path)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(data["t"], data["y"], lw=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel("pointer y")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    return _save(fig, svg_path)


def plot_trajectories(csv_path: Path, svg_path: Path, title: str = "") -> Path:
    """x(t) and y(t) panels, one line per traj_id."""
    data = read_csv_columns(csv_path)
    ids = data.get("traj_id", np.zeros_like(data["t"]))
    fig, (ax_x, ax_y) = plt.subplots(1, 2, figsize=(11, 4), sharex=True)
    for traj_id in np.unique(ids):
        mask = ids == traj_id
        ax_x.plot(data["t"][mask], data["x"][mask], lw=0.9)
        ax_y.plot(data["t"][mask], data["y"][mask], lw=0.9)
    for ax, label in ((ax_x, "x"), (ax_y, "y")):
        ax.set_xlabel("t")
        ax.set_ylabel(label)
        ax.set_ylim(0.0, 1.0)
        ax.grid(alpha=0.3)
    fig.suptitle(title)
    return _save(fig, svg_path)


def plot_densities(csv_paths: Sequence[Path], svg_path: Path, labels: Sequence[str],
                   title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(7, 4))
    for path, label in zip(csv_paths, labels):
        data = read_csv_columns(path)
        ax.plot(data["x"], data["rho"], label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("ρ")
    ax.set_title(title)
    ax.legend()
    ax.grid(alpha=0.3)
    return _save(fig, svg_path)


def plot_histogram(report_csv: Path, column: str, svg_path: Path, bins: int = 64,
                   density_csv: Optional[Path] = None, title: str = "") -> Path:
    """Histogram of one report column, optionally overlaid with |ψ|²."""
    data = read_csv_columns(report_csv)
    values = data[column][~np.isnan(data[column])]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.hist(values, bins=bins, density=True, alpha=0.6, label="samples")
    if density_csv is not None:
        reference = read_csv_columns(density_csv)
        ax.plot(reference["x"], reference["rho"], "r--", label="|ψ|²")
    ax.set_xlabel(column)
    ax.set_title(title)
    ax.legend()
    return _save(fig, svg_path)

"""
Guidance equation in the well: phase gradients, velocities and the quantum potential.

The finite-difference gradient is a central difference of arg ψ over δ with every raw
difference wrapped into (-π, π]; δ shrinks near the walls.
"""

import logging
import math
from typing import Callable, Tuple

import numpy as np

from models import ConfigPoint, GateSchedule, NodeEncounterError, WellWaveFunction
from .basis import (
    density_bound,
    eigenenergy,
    psi_derivatives,
    psi_values,
    x_marginal_density,
)
from .schedule import evolve_schedule

logger = logging.getLogger(__name__)

DEFAULT_GRADIENT_DELTA = 1e-4
NODE_FLOOR = 1e-12

GRADIENT_METHODS = ("finite_difference", "analytic")


def node_floor(coeffs: np.ndarray) -> float:
    """Densities below NODE_FLOOR · sup ρ count as nodes; sup ρ is bounded by 4(Σ|c|)²."""
    return NODE_FLOOR * density_bound(coeffs)


def wrap_phase(dphi):
    """Map a raw phase difference into (-π, π]."""
    return math.pi - np.mod(math.pi - np.asarray(dphi, dtype=float), 2.0 * math.pi)


def wall_delta(u, delta: float) -> np.ndarray:
    """Shrink δ so that u ± δ/2 stays inside [0, 1]."""
    u = np.asarray(u, dtype=float)
    d = np.full_like(u, float(delta))
    d = np.where(u + 0.5 * d > 1.0, 0.5 * (1.0 - u), d)
    d = np.where(u - 0.5 * d < 0.0, 0.5 * u, d)
    return d


def wrapped_difference(psi: Callable, u, delta) -> np.ndarray:
    """(arg ψ(u + δ/2) - arg ψ(u - δ/2)) / δ with the jump correction."""
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        raw = np.angle(psi(u + 0.5 * delta)) - np.angle(psi(u - 0.5 * delta))
        return wrap_phase(raw) / delta


def gradient_field(coeffs: np.ndarray, x, y, delta: float = DEFAULT_GRADIENT_DELTA,
                   method: str = "finite_difference") -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised (∂S/∂x, ∂S/∂y) and a mask of points above the node floor.

    Args:
        coeffs: Well coefficients (a, b, c, d)
        x, y: Positions (broadcastable)
        delta: Finite-difference width
        method: "finite_difference" or "analytic" (Im ∇ψ/ψ)
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    psi = psi_values(coeffs, x, y)
    ok = np.abs(psi) ** 2 >= node_floor(coeffs)
    if method == "analytic":
        value, dx, dy, _, _ = psi_derivatives(coeffs, x, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            gx, gy = np.imag(dx / value), np.imag(dy / value)
    else:
        dxs, dys = wall_delta(x, delta), wall_delta(y, delta)
        ok = ok & (dxs > 0) & (dys > 0)
        gx = wrapped_difference(lambda u: psi_values(coeffs, u, y), x, dxs)
        gy = wrapped_difference(lambda u: psi_values(coeffs, x, u), y, dys)
    return np.where(ok, gx, 0.0), np.where(ok, gy, 0.0), ok


def phase_gradient(w: WellWaveFunction, p: ConfigPoint, delta: float = DEFAULT_GRADIENT_DELTA,
                   method: str = "finite_difference") -> Tuple[float, float]:
    """
    ∇S at one configuration.

    Raises:
        NodeEncounterError: ρ(p) below the node floor
    """
    gx, gy, ok = gradient_field(w.coeffs, p.x, p.y, delta, method)
    if not bool(ok):
        raise NodeEncounterError(f"Density vanishes at ({p.x:.6g}, {p.y:.6g})", p.as_tuple())
    return float(gx), float(gy)


def analytic_phase_gradient(w: WellWaveFunction, p: ConfigPoint) -> Tuple[float, float]:
    return phase_gradient(w, p, method="analytic")


def guidance_velocity(w: WellWaveFunction, p: ConfigPoint, delta: float = DEFAULT_GRADIENT_DELTA,
                      method: str = "finite_difference") -> Tuple[float, float]:
    """dx/dt = ∇S / m."""
    gx, gy = phase_gradient(w, p, delta, method)
    return gx / w.mass, gy / w.mass


def quantum_potential_field(coeffs: np.ndarray, mass: float, x, y) -> Tuple[np.ndarray, np.ndarray]:
    """
    Q = -(1/2m) ∇²R/R with ∇²R/R = Re(∇²ψ/ψ) + |Im(∇ψ/ψ)|², from analytic derivatives.
    """
    value, dx, dy, dxx, dyy = psi_derivatives(coeffs, x, y)
    ok = np.abs(value) ** 2 >= node_floor(coeffs)
    with np.errstate(divide="ignore", invalid="ignore"):
        laplacian_ratio = np.real((dxx + dyy) / value) + np.imag(dx / value) ** 2 + np.imag(dy / value) ** 2
    return np.where(ok, -laplacian_ratio / (2.0 * mass), np.nan), ok


def quantum_potential(w: WellWaveFunction, p: ConfigPoint) -> float:
    """
    Raises:
        NodeEncounterError: R(p) below the node floor
    """
    q, ok = quantum_potential_field(w.coeffs, w.mass, p.x, p.y)
    if not bool(ok):
        raise NodeEncounterError(f"Quantum potential undefined at node ({p.x:.6g}, {p.y:.6g})",
                                 p.as_tuple())
    return float(q)


def free_evolved_coeffs(coeffs: np.ndarray, mass: float, t: float) -> np.ndarray:
    """c_mn e^{-i(E_m + E_n)t}, global phase included."""
    energies = np.array([eigenenergy(m, mass) + eigenenergy(n, mass) for m in (1, 2) for n in (1, 2)])
    return np.asarray(coeffs, dtype=np.complex128) * np.exp(-1j * energies * t)


def hamilton_jacobi_residual(w: WellWaveFunction, x, y, t: float = 0.0, time_step: float = 1e-6,
                             exclude_below: float = 1e-6) -> np.ndarray:
    """
    |-∂S/∂t - (∇S)²/2m - Q| under free evolution (V = 0 inside the well).

    ∂S/∂t = Im(∂ψ/∂t / ψ) with ∂ψ/∂t from a central difference in time; ∇S and Q are
    analytic. Points with ρ < exclude_below · sup ρ are returned as NaN.
    """
    coeffs = free_evolved_coeffs(w.coeffs, w.mass, t)
    value, dx, dy, _, _ = psi_derivatives(coeffs, x, y)
    forward = psi_values(free_evolved_coeffs(w.coeffs, w.mass, t + time_step), x, y)
    backward = psi_values(free_evolved_coeffs(w.coeffs, w.mass, t - time_step), x, y)
    q, _ = quantum_potential_field(coeffs, w.mass, x, y)
    keep = np.abs(value) ** 2 >= exclude_below * density_bound(coeffs)
    with np.errstate(divide="ignore", invalid="ignore"):
        ds_dt = np.imag((forward - backward) / (2.0 * time_step) / value)
        grad_sq = np.imag(dx / value) ** 2 + np.imag(dy / value) ** 2
        residual = np.abs(-ds_dt - grad_sq / (2.0 * w.mass) - q)
    return np.where(keep, residual, np.nan)


def plane_wave_gradient(momentum: float, x, delta: float = DEFAULT_GRADIENT_DELTA) -> np.ndarray:
    """Finite-difference ∂S/∂x of the free plane wave e^{ipx}; equals p while |p|δ < π."""
    return wrapped_difference(lambda u: np.exp(1j * momentum * u), x, delta)


def local_manipulation_deviation(w: WellWaveFunction, schedule: GateSchedule, x, dt: float) -> float:
    """
    Largest change of the x-marginal density caused by evolving under ``schedule``.

    Schedules acting on the auxiliary qubit alone leave it unchanged.
    """
    evolved = evolve_schedule(w, schedule, dt)
    return float(np.max(np.abs(x_marginal_density(evolved, x) - x_marginal_density(w, x))))

"""Infinite-well eigenfunctions, energies and position-space evaluation of the pilot wave."""

import math
from typing import Tuple

import numpy as np

from models import ConfigPoint, InvalidInputError, WellWaveFunction

LEVELS = (1, 2)


def eigenenergy(n: int, mass: float) -> float:
    """E_n = n²π²/(2m) for a box of unit length (ħ = 1)."""
    if n not in LEVELS:
        raise InvalidInputError(f"Only the levels {LEVELS} encode a qubit, got n={n}")
    if not mass > 0:
        raise InvalidInputError(f"Mass must be positive, got {mass}")
    return n * n * math.pi ** 2 / (2.0 * mass)


def omega(mass: float) -> float:
    """ω = (E_1 - E_2)/2; the free evolution of one qubit is R_z(2ωt)."""
    return 0.5 * (eigenenergy(1, mass) - eigenenergy(2, mass))


def free_period(mass: float) -> float:
    """Period 2π/(2|ω|) of the relative phase between the two levels."""
    return 2.0 * math.pi / (2.0 * abs(omega(mass)))


def basis_function(n: int, u):
    """ψ_n(u) = √2 sin(nπu)."""
    return math.sqrt(2.0) * np.sin(n * math.pi * np.asarray(u, dtype=float))


def basis_derivative(n: int, u):
    return math.sqrt(2.0) * n * math.pi * np.cos(n * math.pi * np.asarray(u, dtype=float))


def basis_second_derivative(n: int, u):
    return -(n * math.pi) ** 2 * basis_function(n, u)


def _stack(fn, u) -> np.ndarray:
    return np.stack([fn(n, u) for n in LEVELS])


def coefficient_matrix(coeffs: np.ndarray) -> np.ndarray:
    """C[m, n] with m the data level and n the auxiliary level."""
    return np.asarray(coeffs, dtype=np.complex128).reshape(2, 2)


def psi_values(coeffs: np.ndarray, x, y) -> np.ndarray:
    """ψ(x, y) = Σ_mn C_mn ψ_m(x) ψ_n(y), vectorised over x and y."""
    return np.einsum("mn,m...,n...->...", coefficient_matrix(coeffs), _stack(basis_function, x),
                     _stack(basis_function, y))


def psi_derivatives(coeffs: np.ndarray, x, y) -> Tuple[np.ndarray, ...]:
    """(ψ, ∂xψ, ∂yψ, ∂²xψ, ∂²yψ) from the analytic basis derivatives."""
    c = coefficient_matrix(coeffs)
    fx, dfx, ddfx = (_stack(fn, x) for fn in (basis_function, basis_derivative, basis_second_derivative))
    fy, dfy, ddfy = (_stack(fn, y) for fn in (basis_function, basis_derivative, basis_second_derivative))

    def combine(a, b):
        return np.einsum("mn,m...,n...->...", c, a, b)

    return combine(fx, fy), combine(dfx, fy), combine(fx, dfy), combine(ddfx, fy), combine(fx, ddfy)


def psi_at(w: WellWaveFunction, p: ConfigPoint) -> complex:
    """
    Position-space amplitude
    2[a sin(πx)sin(πy) + b sin(πx)sin(2πy) + c sin(2πx)sin(πy) + d sin(2πx)sin(2πy)].
    """
    return complex(psi_values(w.coeffs, p.x, p.y))


def density(coeffs: np.ndarray, x, y) -> np.ndarray:
    return np.abs(psi_values(coeffs, x, y)) ** 2


def density_bound(coeffs: np.ndarray) -> float:
    """Rigorous upper bound 4(Σ|c|)² on |ψ|² (|sin| ≤ 1)."""
    return float(4.0 * np.sum(np.abs(coeffs)) ** 2)


def x_marginal_density(w: WellWaveFunction, x) -> np.ndarray:
    """∫|ψ(x, y)|² dy = Σ_n |Σ_m C_mn ψ_m(x)|²."""
    amplitudes = np.einsum("mn,m...->n...", coefficient_matrix(w.coeffs), _stack(basis_function, x))
    return np.sum(np.abs(amplitudes) ** 2, axis=0)


def y_marginal_density(w: WellWaveFunction, y) -> np.ndarray:
    """∫|ψ(x, y)|² dx = Σ_m |Σ_n C_mn ψ_n(y)|²."""
    amplitudes = np.einsum("mn,n...->m...", coefficient_matrix(w.coeffs), _stack(basis_function, y))
    return np.sum(np.abs(amplitudes) ** 2, axis=0)


def data_density(sign: int, x) -> np.ndarray:
    """|<x|±>|² = |sin(πx) ± sin(2πx)|² for the data qubit in |+> or |->."""
    x = np.asarray(x, dtype=float)
    return (np.sin(math.pi * x) + sign * np.sin(2.0 * math.pi * x)) ** 2

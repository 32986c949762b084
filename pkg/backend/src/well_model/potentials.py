"""
Matrix elements of potential perturbations between the two lowest well levels.

All integrals are computed by adaptive quadrature; the closed forms are kept next to
them so the verify suite can compare the two.
"""

import logging
import math
import warnings
from enum import Enum
from typing import Callable, Dict, List, NamedTuple

import numpy as np
from scipy import integrate

from models import QuadratureError
from .basis import LEVELS, basis_function

logger = logging.getLogger(__name__)

QUADRATURE_TOLERANCE = 1e-9

# Constants of U(x, y) = (A + B cos πx + C x cos πx)[δV(y) - 1]
ORACLE_A = 52.0 / 27.0
ORACLE_B = -225.0 * math.pi ** 2 / 432.0
ORACLE_C = 225.0 * math.pi ** 2 / 216.0

DELTA_V_SLOPE = 9.0 * math.pi ** 2 / 16.0


def delta_v(u):
    """δV(u) = -(9π²/16)(u - 1/2); its matrix elements form the Pauli X."""
    return -DELTA_V_SLOPE * (np.asarray(u, dtype=float) - 0.5)


class PotentialKind(Enum):
    """Candidate perturbations u(x) and the two-qubit oracle potential."""
    ONE = "one"
    X = "x"
    COS = "cos_pi_x"
    X_COS = "x_cos_pi_x"
    DELTA_V = "delta_v"
    U_XY = "u_xy"


ONE_DIMENSIONAL: Dict[PotentialKind, Callable] = {
    PotentialKind.ONE: lambda u: np.ones_like(np.asarray(u, dtype=float)),
    PotentialKind.X: lambda u: np.asarray(u, dtype=float),
    PotentialKind.COS: lambda u: np.cos(math.pi * np.asarray(u, dtype=float)),
    PotentialKind.X_COS: lambda u: np.asarray(u, dtype=float) * np.cos(math.pi * np.asarray(u, dtype=float)),
    PotentialKind.DELTA_V: delta_v,
}


def quad(integrand: Callable[[float], float], label: str = "") -> float:
    """
    ∫₀¹ integrand by adaptive quadrature.

    Raises:
        QuadratureError: scipy warns or the error estimate exceeds QUADRATURE_TOLERANCE
    """
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, error = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)
        except integrate.IntegrationWarning as e:
            raise QuadratureError(f"Quadrature of {label or 'integrand'} did not converge: {e}") from e
    if error > QUADRATURE_TOLERANCE:
        raise QuadratureError(f"Quadrature of {label or 'integrand'} has error estimate {error:.3e}")
    return float(value)


def one_dimensional_elements(potential: Callable) -> np.ndarray:
    """u_pq = ∫ ψ_p(u) u(u) ψ_q(u) du with ψ_n = √2 sin(nπu)."""
    matrix = np.zeros((2, 2))
    for i, p in enumerate(LEVELS):
        for j, q in enumerate(LEVELS):
            if j < i:
                matrix[i, j] = matrix[j, i]
                continue
            matrix[i, j] = quad(
                lambda u: float(basis_function(p, u) * potential(u) * basis_function(q, u)),
                f"u_{p}{q}"
            )
    return matrix


def oracle_potential_factors(a: float = ORACLE_A, b: float = ORACLE_B,
                             c: float = ORACLE_C):
    """The x and y factors of U(x, y)."""

    def fx(x):
        x = np.asarray(x, dtype=float)
        return a + b * np.cos(math.pi * x) + c * x * np.cos(math.pi * x)

    def fy(y):
        return delta_v(y) - 1.0

    return fx, fy


def oracle_potential(x, y, a: float = ORACLE_A, b: float = ORACLE_B, c: float = ORACLE_C):
    fx, fy = oracle_potential_factors(a, b, c)
    return fx(x) * fy(y)


def oracle_potential_elements(a: float = ORACLE_A, b: float = ORACLE_B,
                              c: float = ORACLE_C) -> np.ndarray:
    """
    ⟨ψ_p ψ_m|U|ψ_q ψ_n⟩ in data-major order.

    U factorises, so the 4×4 matrix is the Kronecker product of the 2×2 x and y elements.
    """
    fx, fy = oracle_potential_factors(a, b, c)
    return np.kron(one_dimensional_elements(fx), one_dimensional_elements(fy))


def perturbation_matrix_elements(kind: PotentialKind) -> np.ndarray:
    """2×2 elements for the one-dimensional candidates, 4×4 for U(x, y)."""
    kind = PotentialKind(kind)
    if kind is PotentialKind.U_XY:
        return oracle_potential_elements()
    return one_dimensional_elements(ONE_DIMENSIONAL[kind])


class TabulatedIntegral(NamedTuple):
    label: str
    computed: float
    closed_form: float

    @property
    def error(self) -> float:
        return abs(self.computed - self.closed_form)


def _sin2(x):
    return math.sin(math.pi * x) ** 2


def standard_integrals() -> List[TabulatedIntegral]:
    """The eight standard integrals ∫₀¹ x^k sin²(πx) cos^j(πx) dx, computed and closed form."""
    pi2 = math.pi ** 2
    table = [
        ("sin²(πx)", lambda x: _sin2(x), 0.5),
        ("x sin²(πx)", lambda x: x * _sin2(x), 0.25),
        ("sin²(πx)cos(πx)", lambda x: _sin2(x) * math.cos(math.pi * x), 0.0),
        ("x sin²(πx)cos(πx)", lambda x: x * _sin2(x) * math.cos(math.pi * x), -4.0 / (9.0 * pi2)),
        ("sin²(πx)cos²(πx)", lambda x: _sin2(x) * math.cos(math.pi * x) ** 2, 0.125),
        ("x sin²(πx)cos²(πx)", lambda x: x * _sin2(x) * math.cos(math.pi * x) ** 2, 0.0625),
        ("sin²(πx)cos³(πx)", lambda x: _sin2(x) * math.cos(math.pi * x) ** 3, 0.0),
        ("x sin²(πx)cos³(πx)", lambda x: x * _sin2(x) * math.cos(math.pi * x) ** 3, -52.0 / (225.0 * pi2)),
    ]
    return [TabulatedIntegral(label, quad(fn, label), exact) for label, fn, exact in table]


def candidate_table() -> Dict[PotentialKind, np.ndarray]:
    """Matrix elements of 1, x, cos πx and x cos πx."""
    return {kind: perturbation_matrix_elements(kind)
            for kind in (PotentialKind.ONE, PotentialKind.X, PotentialKind.COS, PotentialKind.X_COS)}


def closed_form_candidate_table() -> Dict[PotentialKind, np.ndarray]:
    pi2 = math.pi ** 2
    return {
        PotentialKind.ONE: np.array([[1.0, 0.0], [0.0, 1.0]]),
        PotentialKind.X: np.array([[0.5, -16.0 / (9.0 * pi2)], [-16.0 / (9.0 * pi2), 0.5]]),
        PotentialKind.COS: np.array([[0.0, 0.5], [0.5, 0.0]]),
        PotentialKind.X_COS: np.array([[-8.0 / (9.0 * pi2), 0.25], [0.25, -416.0 / (225.0 * pi2)]]),
    }


def solve_oracle_potential_constants() -> np.ndarray:
    """
    Solve for (A, B, C) such that A·1 + B cos πx + C x cos πx has elements [[1, 0], [0, 0]].

    The three equations are the u_11, u_12 and u_22 conditions, built from quadrature.
    """
    table = candidate_table()
    columns = [table[PotentialKind.ONE], table[PotentialKind.COS], table[PotentialKind.X_COS]]
    system = np.array([[m[0, 0] for m in columns],
                       [m[0, 1] for m in columns],
                       [m[1, 1] for m in columns]])
    rhs = np.array([1.0, 0.0, 0.0])
    constants = np.linalg.solve(system, rhs)
    logger.debug(f"Oracle potential constants A={constants[0]:.12g}, B={constants[1]:.12g}, "
                 f"C={constants[2]:.12g}")
    return constants

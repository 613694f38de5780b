"""Conserved matrices of the regularized flow and the n = 2 Kepler problem."""

from typing import Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from app.exceptions import ConventionError, DomainError
from app.dynamics.integrator import Trajectory
from app.momentum.types import CotangentHn
from app.schema import Realization
from app.twistor_core.types import TwistorVector


X_NORM = "x_norm"


def integrals_mr(p: CotangentHn) -> Tuple[np.ndarray, np.ndarray]:
    """M = i[X, Y] and R = X + Y X Y."""
    y, x = p.Y, p.X
    return 1j * (x @ y - y @ x), x + y @ x @ y


def n_plus_minus(p: CotangentHn) -> Tuple[np.ndarray, np.ndarray]:
    """N+ = (R + M)/2 and N- = (R - M)/2.

    Through (eta, xi) = C (Y zeta, zeta) they equal xi xi^+ and eta eta^+.
    """
    m, r = integrals_mr(p)
    return 0.5 * (r + m), 0.5 * (r - m)


def integrals_from_twistor(v: TwistorVector) -> Tuple[np.ndarray, np.ndarray]:
    """(M, R) = (xi xi^+ - eta eta^+, xi xi^+ + eta eta^+), finite through collisions."""
    if v.realization != Realization.DIAGONAL:
        raise ConventionError("integrals_from_twistor takes (eta, xi)")
    n_plus = np.outer(v.lower, v.lower.conj())
    n_minus = np.outer(v.upper, v.upper.conj())
    return n_plus - n_minus, n_plus + n_minus


def kepler_h0_n2(y: np.ndarray, x: np.ndarray) -> float:
    """H0 = |x| (1 + y^2); with the KS vector x this equals I~0."""
    y = np.asarray(y, dtype=float)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise DomainError("H0 is singular at x = 0")
    return norm * (1.0 + float(y @ y))


def mr_vectors_n2(y: np.ndarray, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, float, float]:
    """Pauli parts of M and R on rank-one data (y0 = 0, x0 = |x|).

    M = 2 (y cross x), R = (1 - y^2) x + 2 y (x . y), M0 = 0, R0 = |x| (1 + y^2).
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    y2 = float(y @ y)
    m_vec = 2.0 * np.cross(y, x)
    r_vec = (1.0 - y2) * x + 2.0 * y * float(x @ y)
    return m_vec, r_vec, 0.0, float(np.linalg.norm(x)) * (1.0 + y2)


def fictitious_to_physical(traj: Trajectory, key: str = X_NORM) -> np.ndarray:
    """t(s) = integral of |x(s)| ds by the trapezoidal rule.

    Raises:
        DomainError: If the trajectory carries no |x| samples or one is not positive.
    """
    if key not in traj.invariants:
        raise DomainError(f"trajectory carries no '{key}' samples")
    norms = traj.invariants[key]
    if np.any(norms <= 0):
        raise DomainError("|x| must stay positive to reparametrize time")
    return cumulative_trapezoid(norms, traj.times, initial=0.0)

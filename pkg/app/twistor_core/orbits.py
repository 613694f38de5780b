"""Nilpotent orbit labels, normal forms and the stabilizer of Z = E."""

from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from app.exceptions import DimensionError, MembershipError
from app.schema import Realization
from app.twistor_core.forms import anti_hermitian_residual, frobenius, make_form
from app.twistor_core.types import GroupElement, OrbitLabel, as_square_matrix


# Relative width of the dead band around zero in the signature count.
SIGNATURE_BAND = 1e-8


def rho_normal_form(n: int, k: int, l: int) -> np.ndarray:
    """i diag(1 (k times), -1 (l times), 0, ...)."""
    if n < 1:
        raise DimensionError(f"half-dimension must be positive, got {n}")
    if k < 0 or l < 0 or k + l > n:
        raise DimensionError(f"need 0 <= k, l and k + l <= n, got k={k}, l={l}, n={n}")
    diagonal = np.concatenate([np.ones(k), -np.ones(l), np.zeros(n - k - l)])
    return 1j * np.diag(diagonal)


def orbit_label(rho: np.ndarray, tol: Optional[float] = None) -> OrbitLabel:
    """Signature (k, l) of -i rho by Sylvester's law of inertia.

    Args:
        rho: Anti-hermitian n x n matrix.
        tol: Absolute dead band; defaults to 1e-8 times the spectral radius.

    Returns:
        OrbitLabel: k eigenvalues of -i rho above the band, l below it.

    Raises:
        MembershipError: If rho is not anti-hermitian.
    """
    rho = as_square_matrix(rho, "rho")
    if anti_hermitian_residual(rho) > 1e-8:
        raise MembershipError("orbit_label expects an anti-hermitian matrix")
    h = -1j * rho
    eigenvalues = scipy.linalg.eigvalsh(0.5 * (h + h.conj().T))
    if tol is None:
        radius = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
        tol = SIGNATURE_BAND * radius
    return OrbitLabel(
        k=int(np.sum(eigenvalues > tol)),
        l=int(np.sum(eigenvalues < -tol)),
    )


def is_square_zero(m: np.ndarray, tol: float = 1e-10) -> Tuple[bool, int]:
    """Whether m^2 vanishes (relative to 1 + ||m||_F^2), and the numerical rank of m."""
    m = as_square_matrix(m)
    scale = frobenius(m)
    nilpotent = frobenius(m @ m) <= tol * (1.0 + scale**2)
    singular_values = scipy.linalg.svdvals(m)
    cutoff = tol * max(1.0, float(singular_values[0]) if singular_values.size else 0.0)
    return bool(nilpotent), int(np.sum(singular_values > cutoff))


def square_zero_residual(m: np.ndarray) -> float:
    m = np.asarray(m)
    return frobenius(m @ m) / (1.0 + frobenius(m) ** 2)


def stabilizer_element(f: np.ndarray, h: np.ndarray, tol: float = 1e-10) -> GroupElement:
    """Element of U(n,n)_E assembled from an invertible F and H with H F^+ + F H^+ = 0.

    A = P + H, B = Q - H, C = Q + H, D = P - H with P = ((F^+)^-1 + F)/2 and
    Q = (F - (F^+)^-1)/2, so that A + B = C + D = F.
    """
    f = as_square_matrix(f, "F")
    h = as_square_matrix(h, "H")
    if f.shape != h.shape:
        raise DimensionError(f"F and H must have equal shapes, got {f.shape} and {h.shape}")
    if np.linalg.cond(f) > 1.0 / tol:
        raise MembershipError("F must be invertible")
    constraint = h @ f.conj().T + f @ h.conj().T
    if frobenius(constraint) > tol * (1.0 + frobenius(f) * frobenius(h)):
        raise MembershipError("H F^+ + F H^+ must vanish")

    g = np.linalg.inv(f.conj().T)
    p = 0.5 * (g + f)
    q = 0.5 * (f - g)
    matrix = np.block([[p + h, q - h], [q + h, p - h]])
    return GroupElement(form=make_form(f.shape[0], Realization.DIAGONAL), matrix=matrix)

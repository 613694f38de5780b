"""Pauli coordinates and the classical KS transform for n = 2.

The basis is right-handed, sigma_1 sigma_2 = i sigma_3, and a hermitian A
decomposes as a0 sigma_0 + a . sigma with a0 = Tr A / 2 and a_k = Tr(A sigma_k) / 2.
"""

from typing import Tuple

import numpy as np
from pydantic import field_validator

from app.exceptions import DimensionError, DomainError, MembershipError
from app.momentum.types import CotangentHn
from app.regularize.classes import rank_one_factor
from app.regularize.ks import check_section_domain
from app.schema import Realization
from app.twistor_core.forms import hermitian_residual
from app.twistor_core.types import ArrayModel, TwistorVector, as_square_matrix


SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
SIGMA.setflags(write=False)


class PauliVector(ArrayModel):
    """Coefficients (a0, a) of a0 sigma_0 + a . sigma."""

    scalar: float
    vec: np.ndarray

    @field_validator("vec", mode="before")
    @classmethod
    def check_vec(cls, value):
        arr = np.array(value, dtype=float)
        if arr.shape != (3,):
            raise DimensionError(f"Pauli vector part must have 3 entries, got shape {arr.shape}")
        arr.setflags(write=False)
        return arr


def _dot_sigma(a: np.ndarray) -> np.ndarray:
    return np.tensordot(np.asarray(a, dtype=float), SIGMA[1:], axes=1)


def pauli_decompose(a: np.ndarray, tol: float = 1e-10) -> PauliVector:
    a = as_square_matrix(a, "Pauli argument")
    if a.shape != (2, 2):
        raise DimensionError(f"Pauli decomposition needs a 2x2 matrix, got {a.shape}")
    if hermitian_residual(a) > tol:
        raise MembershipError("Pauli decomposition needs a hermitian matrix")
    coefficients = 0.5 * np.einsum("ij,kji->k", a, SIGMA).real
    return PauliVector(scalar=coefficients[0], vec=coefficients[1:])


def pauli_compose(p: PauliVector) -> np.ndarray:
    return p.scalar * SIGMA[0] + _dot_sigma(p.vec)


def pauli_coordinates(p: CotangentHn) -> Tuple[np.ndarray, np.ndarray]:
    """Pauli vector parts (y, x) of (Y, X); x is half the KS vector of the same point."""
    if p.n != 2:
        raise DimensionError(f"Pauli coordinates need n = 2, got n = {p.n}")
    return pauli_decompose(p.Y).vec, pauli_decompose(p.X).vec


def ks_transform_n2(v: TwistorVector, tol: float = 1e-10) -> Tuple[np.ndarray, np.ndarray]:
    """y = Re(upsilon^+ sigma zeta) / zeta^+ zeta and x = zeta^+ sigma zeta.

    |x| = zeta^+ zeta = Tr X, and y is the Pauli vector of ks_section(v).Y.
    """
    if v.n != 2:
        raise DimensionError(f"KS transform needs n = 2, got n = {v.n}")
    zeta_norm2 = check_section_domain(v, tol)
    ups, zeta = v.upper, v.lower
    sigma_zeta = SIGMA[1:] @ zeta
    y = np.array([np.vdot(ups, s).real for s in sigma_zeta]) / zeta_norm2
    x = np.array([np.vdot(zeta, s).real for s in sigma_zeta])
    return y, x


def ks_inverse_n2(y: np.ndarray, x: np.ndarray) -> TwistorVector:
    """A null anti-diagonal twistor with KS image (y, x); unique up to phase."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise DomainError("the KS vector x must be nonzero")
    zeta = rank_one_factor(0.5 * (norm * SIGMA[0] + _dot_sigma(x)))
    return TwistorVector(
        realization=Realization.ANTIDIAGONAL, upper=_dot_sigma(y) @ zeta, lower=zeta
    )

"""Cayley transform between H(n) and U(n), and its cotangent lift."""

import numpy as np

from app.exceptions import MembershipError
from app.momentum.types import CotangentHn, CotangentUn
from app.twistor_core.forms import hermitian_residual, solve_right, unitary_residual
from app.twistor_core.types import as_square_matrix


MEMBERSHIP_TOL = 1e-8


def cayley(y: np.ndarray) -> np.ndarray:
    """Z = (Y - iE)(-iY + E)^-1, unitary for hermitian Y."""
    y = as_square_matrix(y, "Y")
    if hermitian_residual(y) > MEMBERSHIP_TOL:
        raise MembershipError("cayley expects a hermitian matrix")
    eye = np.eye(y.shape[0])
    return solve_right(y - 1j * eye, -1j * y + eye)


def cayley_inverse(z: np.ndarray) -> np.ndarray:
    """Y = (Z + iE)(iZ + E)^-1.

    Raises:
        SingularActionError: On the boundary det(iZ + E) = 0, e.g. Z = iE.
    """
    z = as_square_matrix(z, "Z")
    if unitary_residual(z) > MEMBERSHIP_TOL:
        raise MembershipError("cayley_inverse expects a unitary matrix")
    eye = np.eye(z.shape[0])
    return solve_right(z + 1j * eye, 1j * z + eye)


def t_star_c(p: CotangentHn) -> CotangentUn:
    """(Y, X) -> (cayley(Y), (i/2) K X K^+) with K = -iY + E."""
    k = -1j * p.Y + np.eye(p.n)
    return CotangentUn(Z=cayley(p.Y), rho=0.5j * (k @ p.X @ k.conj().T))

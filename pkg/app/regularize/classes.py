"""Rank-one factors and U(1) classes of twistors."""

from typing import Optional

import numpy as np
import scipy.linalg

from app.exceptions import ConventionError, MembershipError, RankError
from app.schema import Realization
from app.twistor_core.forms import hermitian_residual, make_form
from app.twistor_core.types import AlgebraElement, TwistorVector, as_square_matrix


def rank_one_factor(x: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Return zeta with X = zeta zeta^+ for a rank-one positive semi-definite X.

    Eigenvalues are compared with tol times the spectral radius. The phase of
    zeta makes its first entry of modulus above tol * |zeta| real positive.

    Raises:
        RankError: If X is zero, has a negative eigenvalue or rank above one.
    """
    x = as_square_matrix(x, "X")
    if hermitian_residual(x) > 1e-8:
        raise MembershipError("rank_one_factor expects a hermitian matrix")
    eigenvalues, vectors = scipy.linalg.eigh(0.5 * (x + x.conj().T))
    scale = float(np.max(np.abs(eigenvalues)))
    if scale == 0.0 or eigenvalues[-1] <= tol * scale:
        raise RankError("matrix has no positive eigenvalue")
    if eigenvalues[0] < -tol * scale:
        raise RankError(f"matrix has a negative eigenvalue {eigenvalues[0]:.3g}")
    if eigenvalues.size > 1 and eigenvalues[-2] > tol * scale:
        raise RankError(f"matrix has rank above one (second eigenvalue {eigenvalues[-2]:.3g})")

    zeta = np.sqrt(eigenvalues[-1]) * vectors[:, -1]
    moduli = np.abs(zeta)
    pivot = int(np.argmax(moduli > tol * np.linalg.norm(zeta)))
    return zeta * (np.conj(zeta[pivot]) / moduli[pivot])


def canonical_representative(v: TwistorVector) -> TwistorVector:
    """Rotate v so that the largest-modulus entry of its lower component is real positive."""
    component = v.lower if np.any(v.lower) else v.upper
    if not np.any(component):
        return v
    entry = component[int(np.argmax(np.abs(component)))]
    return v.scaled(np.conj(entry) / abs(entry))


def class_distance(v: TwistorVector, w: TwistorVector) -> float:
    """min over |lambda| = 1 of |v - lambda w|."""
    if v.realization != w.realization:
        raise ConventionError("class distance needs twistors of one realization")
    a, b = v.stacked, w.stacked
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(a - phase * b))


def _invert(m: AlgebraElement, realization: Realization, tol: Optional[float]) -> TwistorVector:
    if m.form.realization != realization:
        raise ConventionError(f"expected an element of the {realization.value} algebra")
    phi = make_form(m.form.n, realization).matrix
    w = rank_one_factor(1j * m.matrix @ phi, tol=1e-10 if tol is None else tol)
    return canonical_representative(TwistorVector.from_stacked(w, realization))


def invert_j_pm(m: AlgebraElement, tol: Optional[float] = None) -> TwistorVector:
    """Class of w with j_pm(w) = m; i m phi_d = w w^+."""
    return _invert(m, Realization.DIAGONAL, tol)


def invert_j_pm_tilde(m: AlgebraElement, tol: Optional[float] = None) -> TwistorVector:
    """Class of u with j_pm_tilde(u) = m; i m phi_a = u u^+."""
    return _invert(m, Realization.ANTIDIAGONAL, tol)

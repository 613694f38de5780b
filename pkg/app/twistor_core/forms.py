"""Hermitian forms of signature (n, n), membership predicates and the Cayley intertwiner."""

from typing import Union

import numpy as np
import scipy.linalg

from app.exceptions import DimensionError, SingularActionError
from app.schema import Realization
from app.twistor_core.types import (
    AlgebraElement,
    GroupElement,
    HermitianForm,
    Intertwiner,
    TwistorVector,
    as_square_matrix,
    split_blocks,
)


MatrixLike = Union[np.ndarray, AlgebraElement, GroupElement]

# Denominators of fractional-linear maps with a larger condition number are singular.
SINGULAR_CONDITION = 1e12


def _matrix_of(m: MatrixLike) -> np.ndarray:
    if isinstance(m, (AlgebraElement, GroupElement, Intertwiner)):
        return m.matrix
    return as_square_matrix(m)


def _check_fits(m: np.ndarray, form: HermitianForm):
    if m.shape != form.matrix.shape:
        raise DimensionError(
            f"matrix of shape {m.shape} does not fit a form on C^{2 * form.n}"
        )


def make_form(n: int, realization: Realization) -> HermitianForm:
    """Return phi_d = diag(E, -E) or phi_a = i [[0, -E], [E, 0]].

    Args:
        n: Half-dimension, at least 1.
        realization: Block shape of the form.

    Returns:
        HermitianForm: The form of signature (n, n).

    Raises:
        DimensionError: If n < 1.
    """
    if n < 1:
        raise DimensionError(f"half-dimension must be positive, got {n}")
    eye = np.eye(n)
    zero = np.zeros((n, n))
    if Realization(realization) == Realization.DIAGONAL:
        matrix = np.block([[eye, zero], [zero, -eye]])
    else:
        matrix = 1j * np.block([[zero, -eye], [eye, zero]])
    return HermitianForm(n=n, realization=realization, matrix=matrix)


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def hermitian_residual(m: np.ndarray) -> float:
    m = np.asarray(m)
    return frobenius(m - m.conj().T) / (1.0 + frobenius(m))


def anti_hermitian_residual(m: np.ndarray) -> float:
    m = np.asarray(m)
    return frobenius(m + m.conj().T) / (1.0 + frobenius(m))


def unitary_residual(m: np.ndarray) -> float:
    m = np.asarray(m)
    return frobenius(m.conj().T @ m - np.eye(m.shape[0])) / (1.0 + frobenius(m) ** 2)


def is_hermitian(m: np.ndarray, tol: float = 1e-10) -> bool:
    return hermitian_residual(m) <= tol


def is_anti_hermitian(m: np.ndarray, tol: float = 1e-10) -> bool:
    return anti_hermitian_residual(m) <= tol


def is_unitary(m: np.ndarray, tol: float = 1e-10) -> bool:
    return unitary_residual(m) <= tol


def group_residual(m: MatrixLike, form: HermitianForm) -> float:
    """Relative residual ||m^+ phi m - phi||_F / (1 + ||m||_F^2)."""
    matrix = _matrix_of(m)
    _check_fits(matrix, form)
    phi = form.matrix
    return frobenius(matrix.conj().T @ phi @ matrix - phi) / (1.0 + frobenius(matrix) ** 2)


def algebra_residual(m: MatrixLike, form: HermitianForm) -> float:
    """Relative residual ||m^+ phi + phi m||_F / (1 + ||m||_F)."""
    matrix = _matrix_of(m)
    _check_fits(matrix, form)
    phi = form.matrix
    return frobenius(matrix.conj().T @ phi + phi @ matrix) / (1.0 + frobenius(matrix))


def is_group_element(m: MatrixLike, form: HermitianForm, tol: float = 1e-10) -> bool:
    return group_residual(m, form) <= tol


def is_algebra_element(m: MatrixLike, form: HermitianForm, tol: float = 1e-10) -> bool:
    return algebra_residual(m, form) <= tol


def cayley_intertwiner(n: int) -> Intertwiner:
    """The unitary C = (1/sqrt 2) [[E, -iE], [-iE, E]] with C^+ phi_d C = phi_a."""
    if n < 1:
        raise DimensionError(f"half-dimension must be positive, got {n}")
    eye = np.eye(n)
    matrix = np.block([[eye, -1j * eye], [-1j * eye, eye]]) / np.sqrt(2.0)
    return Intertwiner(
        source=make_form(n, Realization.ANTIDIAGONAL),
        target=make_form(n, Realization.DIAGONAL),
        matrix=matrix,
    )


def change_realization(v: TwistorVector) -> TwistorVector:
    """(eta, xi) = C (upsilon, zeta) and (upsilon, zeta) = C^+ (eta, xi)."""
    c = cayley_intertwiner(v.n).matrix
    if v.realization == Realization.ANTIDIAGONAL:
        return TwistorVector.from_stacked(c @ v.stacked, Realization.DIAGONAL)
    return TwistorVector.from_stacked(c.conj().T @ v.stacked, Realization.ANTIDIAGONAL)


def ad_cayley(m: np.ndarray) -> np.ndarray:
    """Ad_C: anti-diagonal algebra to diagonal algebra, X -> C X C^+."""
    m = as_square_matrix(m)
    c = cayley_intertwiner(m.shape[0] // 2).matrix
    return c @ m @ c.conj().T


def ad_cayley_inverse(m: np.ndarray) -> np.ndarray:
    m = as_square_matrix(m)
    c = cayley_intertwiner(m.shape[0] // 2).matrix
    return c.conj().T @ m @ c


def null_invariant(v: TwistorVector) -> float:
    """I+- = eta^+ eta - xi^+ xi, or I~+- = i (zeta^+ upsilon - upsilon^+ zeta)."""
    if v.realization == Realization.DIAGONAL:
        return float(np.vdot(v.upper, v.upper).real - np.vdot(v.lower, v.lower).real)
    value = 1j * (np.vdot(v.lower, v.upper) - np.vdot(v.upper, v.lower))
    return float(value.real)


def adjoint(g: GroupElement, x: MatrixLike) -> np.ndarray:
    """Ad_g X = g X g^-1."""
    matrix = _matrix_of(x)
    _check_fits(matrix, g.form)
    return g.matrix @ matrix @ g.inverse()


def solve_right(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    """numerator @ denominator^-1, refusing near-singular denominators."""
    if np.linalg.cond(denominator) > SINGULAR_CONDITION:
        raise SingularActionError(
            f"denominator is singular (condition number {np.linalg.cond(denominator):.3g})"
        )
    return scipy.linalg.solve(denominator.T, numerator.T).T


def fractional_action(g: MatrixLike, z: np.ndarray) -> np.ndarray:
    """(A Z + B)(C Z + D)^-1 for the block decomposition of g."""
    a, b, c, d = split_blocks(_matrix_of(g))
    z = as_square_matrix(z)
    if z.shape != a.shape:
        raise DimensionError(f"point of shape {z.shape} does not fit blocks {a.shape}")
    return solve_right(a @ z + b, c @ z + d)


def isotropic_frame(z: np.ndarray) -> np.ndarray:
    """The 2n x n frame [Z; E] of the isotropic subspace {(Z xi, xi)} attached to Z."""
    z = as_square_matrix(z)
    return np.vstack([z, np.eye(z.shape[0])])


def is_isotropic(frame: np.ndarray, form: HermitianForm, tol: float = 1e-10) -> bool:
    frame = np.asarray(frame, dtype=complex)
    if frame.shape != (2 * form.n, form.n):
        raise DimensionError(f"frame must be {2 * form.n}x{form.n}, got {frame.shape}")
    gram = frame.conj().T @ form.matrix @ frame
    return frobenius(gram) <= tol * (1.0 + frobenius(frame) ** 2)

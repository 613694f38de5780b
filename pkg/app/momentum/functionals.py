"""Linear functionals L_X(A) = Tr(X A) on u(n,n) and their Lie-Poisson brackets."""

from typing import Union

import numpy as np

from app.exceptions import ConventionError, DimensionError
from app.momentum.types import LinearFunctional
from app.schema import Realization
from app.twistor_core.forms import cayley_intertwiner, make_form
from app.twistor_core.types import AlgebraElement, split_blocks


def _generator(n: int, matrix: np.ndarray, realization: Realization) -> LinearFunctional:
    if Realization(realization) == Realization.ANTIDIAGONAL:
        c = cayley_intertwiner(n).matrix
        matrix = c.conj().T @ matrix @ c
    return LinearFunctional(
        generator=AlgebraElement(form=make_form(n, realization), matrix=matrix)
    )


def x_plus_plus(n: int, realization: Realization = Realization.DIAGONAL) -> LinearFunctional:
    """Generator i E; pairs with the twistor momentum map to the null invariant."""
    return _generator(n, 1j * np.eye(2 * n), realization)


def x_plus_minus(n: int, realization: Realization = Realization.DIAGONAL) -> LinearFunctional:
    """Generator i phi_d, or its Cayley image i phi_a on the anti-diagonal side.

    Pairs with the twistor momentum maps to I++ and with the cotangent maps to
    I0 and I~0.
    """
    form = make_form(n, Realization.DIAGONAL)
    return _generator(n, 1j * form.matrix, realization)


def _check_compatible(x: AlgebraElement, other: AlgebraElement):
    if x.form.realization != other.form.realization:
        raise ConventionError(
            f"cannot pair {x.form.realization.value} and {other.form.realization.value} elements"
        )
    if x.matrix.shape != other.matrix.shape:
        raise DimensionError(f"shapes {x.matrix.shape} and {other.matrix.shape} differ")


def linear_functional_eval(functional: LinearFunctional, a: Union[AlgebraElement, np.ndarray]) -> float:
    """Tr(X A), real whenever both arguments lie in u(n,n)."""
    x = functional.generator
    if isinstance(a, AlgebraElement):
        _check_compatible(x, a)
        a = a.matrix
    a = np.asarray(a)
    if a.shape != x.matrix.shape:
        raise DimensionError(f"argument of shape {a.shape} does not fit {x.matrix.shape}")
    return float(np.trace(x.matrix @ a).real)


def bracket_of_linear(l1: LinearFunctional, l2: LinearFunctional) -> LinearFunctional:
    x1, x2 = l1.generator, l2.generator
    _check_compatible(x1, x2)
    commutator = x1.matrix @ x2.matrix - x2.matrix @ x1.matrix
    return LinearFunctional(generator=AlgebraElement(form=x1.form, matrix=commutator))


def lie_poisson_linear(l1: LinearFunctional, l2: LinearFunctional, a: AlgebraElement) -> float:
    """Lie-Poisson bracket of two linear functions at A, from block partials.

    The partials of L_X with respect to the blocks (alpha, beta, beta^+, delta)
    of A are the constant blocks (a, b, c, d) of X, so the bracket expands to
    Tr(A11 K11 + A12 K21 + A21 K12 + A22 K22) with K the block commutator.
    """
    _check_compatible(l1.generator, l2.generator)
    _check_compatible(l1.generator, a)
    a1, b1, c1, d1 = l1.generator.blocks()
    a2, b2, c2, d2 = l2.generator.blocks()
    alpha, beta, beta_dagger, delta = split_blocks(a.matrix)

    k11 = a1 @ a2 - a2 @ a1 + b1 @ c2 - b2 @ c1
    k12 = a1 @ b2 + b1 @ d2 - a2 @ b1 - b2 @ d1
    k21 = c1 @ a2 + d1 @ c2 - c2 @ a1 - d2 @ c1
    k22 = d1 @ d2 - d2 @ d1 + c1 @ b2 - c2 @ b1
    value = np.trace(alpha @ k11 + beta @ k21 + beta_dagger @ k12 + delta @ k22)
    return float(value.real)

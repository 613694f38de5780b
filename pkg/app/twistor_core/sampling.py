"""Seeded random elements for the property sweeps.

Functions taking ``rng`` draw from a caller-owned ``numpy`` generator; the
group and algebra samplers take an integer seed and are deterministic per seed.
"""

from typing import Tuple

import numpy as np
import scipy.linalg

from app.exceptions import DimensionError
from app.schema import Realization
from app.twistor_core.forms import change_realization
from app.twistor_core.types import AlgebraElement, GroupElement, HermitianForm, TwistorVector


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    m = complex_gaussian(rng, (n, n))
    return scale * 0.5 * (m + m.conj().T)


def random_anti_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return 1j * random_hermitian(n, rng, scale)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_invertible(n: int, rng: np.random.Generator, cond_max: float = 1e3) -> np.ndarray:
    """U diag(s) V with singular values spread over [1, cond_max]."""
    s = np.exp(rng.uniform(0.0, np.log(cond_max), size=n))
    return random_unitary(n, rng) @ np.diag(s / s.max()) @ random_unitary(n, rng)


def random_null_twistor(
    n: int, rng: np.random.Generator, realization: Realization = Realization.DIAGONAL
) -> TwistorVector:
    """A twistor with vanishing null invariant (|eta| = |xi| before any change of realization)."""
    eta = complex_gaussian(rng, n)
    xi = complex_gaussian(rng, n)
    xi *= np.linalg.norm(eta) / np.linalg.norm(xi)
    v = TwistorVector(realization=Realization.DIAGONAL, upper=eta, lower=xi)
    if Realization(realization) == Realization.ANTIDIAGONAL:
        return change_realization(v)
    return v


def random_twistor(
    n: int, rng: np.random.Generator, realization: Realization = Realization.DIAGONAL
) -> TwistorVector:
    return TwistorVector(
        realization=realization,
        upper=complex_gaussian(rng, n),
        lower=complex_gaussian(rng, n),
    )


def random_generic_twistor(n: int, rng: np.random.Generator, low: float = 0.5, high: float = 1.5) -> TwistorVector:
    """Diagonal twistor whose coordinates have moduli in [low, high] and uniform phases."""
    w = rng.uniform(low, high, 2 * n) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, 2 * n))
    return TwistorVector.from_stacked(w, Realization.DIAGONAL)


def random_stabilizer_pair(n: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """(F, H) with F invertible and H F^+ + F H^+ = 0."""
    f = random_invertible(n, rng, cond_max=10.0)
    s = random_anti_hermitian(n, rng)
    return f, s @ np.linalg.inv(f.conj().T)


def _project_to_algebra(m: np.ndarray, phi: np.ndarray) -> np.ndarray:
    return 0.5 * (m - phi @ m.conj().T @ phi)


def random_algebra_element(
    n: int, form: HermitianForm, seed: int, scale: float = 1.0
) -> AlgebraElement:
    """Projection of a complex Gaussian onto u(n,n), rescaled to spectral norm in [scale/2, scale]."""
    if scale <= 0:
        raise DimensionError(f"scale must be positive, got {scale}")
    if form.n != n:
        raise DimensionError(f"form is for n={form.n}, requested n={n}")
    rng = np.random.default_rng(seed)
    x = _project_to_algebra(complex_gaussian(rng, (2 * n, 2 * n)), form.matrix)
    x *= scale * rng.uniform(0.5, 1.0) / np.linalg.norm(x, 2)
    return AlgebraElement(form=form, matrix=x)


def random_group_element(
    n: int, form: HermitianForm, seed: int, scale: float = 1.0
) -> GroupElement:
    """exp of a sampled algebra element."""
    x = random_algebra_element(n, form, seed, scale)
    return GroupElement(form=form, matrix=scipy.linalg.expm(x.matrix))

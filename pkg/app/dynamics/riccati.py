"""The regularized Kepler flow on H(n) x H(n) and on twistors.

Vector fields follow i_V omega = dH with omega = d(-Tr(X dY)), so that
Y' = grad_X H and X' = -grad_Y H in the trace pairing. For H = I~0 this is
the matrix Riccati system Y' = E + Y^2, X' = -(XY + YX).
"""

from functools import lru_cache
from typing import Callable, List, Tuple

import numpy as np

from app.exceptions import ConventionError, DimensionError
from app.momentum.actions import act_sigma_tilde
from app.momentum.types import CotangentHn
from app.schema import Realization
from app.twistor_core.forms import make_form
from app.twistor_core.types import GroupElement, TwistorVector


HermitianPair = Tuple[np.ndarray, np.ndarray]


def hamiltonian_field(p: CotangentHn) -> HermitianPair:
    """(Y', X') = (E + Y^2, -(XY + YX)), the field of I~0."""
    y, x = p.Y, p.X
    return np.eye(p.n) + y @ y, -(x @ y + y @ x)


@lru_cache(maxsize=16)
def hermitian_basis(n: int) -> Tuple[np.ndarray, ...]:
    """Orthonormal basis of H(n) for the pairing Re Tr(A B)."""
    basis: List[np.ndarray] = []
    for j in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[j, j] = 1.0
        basis.append(e)
    for j in range(n):
        for k in range(j + 1, n):
            sym = np.zeros((n, n), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0 / np.sqrt(2.0)
            anti = np.zeros((n, n), dtype=complex)
            anti[j, k] = 1j / np.sqrt(2.0)
            anti[k, j] = -1j / np.sqrt(2.0)
            basis.extend([sym, anti])
    for b in basis:
        b.setflags(write=False)
    return tuple(basis)


def _gradient(f: Callable[[np.ndarray], float], a: np.ndarray, h: float) -> np.ndarray:
    grad = np.zeros_like(a, dtype=complex)
    for b in hermitian_basis(a.shape[0]):
        grad += (f(a + h * b) - f(a - h * b)) / (2.0 * h) * b
    return grad


def finite_difference_field(
    hamiltonian: Callable[[CotangentHn], float], p: CotangentHn, h: float = 1e-6
) -> HermitianPair:
    """Hamiltonian field of an arbitrary H by central differences in a hermitian basis."""
    step = h * (1.0 + float(np.linalg.norm(p.Y)) + float(np.linalg.norm(p.X)))
    grad_x = _gradient(lambda x: hamiltonian(CotangentHn(Y=p.Y, X=x)), p.X, step)
    grad_y = _gradient(lambda y: hamiltonian(CotangentHn(Y=y, X=p.X)), p.Y, step)
    return grad_x, -grad_y


def rotation_element(n: int, t: float) -> GroupElement:
    """C^+ diag(e^{it} E, e^{-it} E) C = [[cos t E, sin t E], [-sin t E, cos t E]]."""
    eye = np.eye(n)
    matrix = np.block([[np.cos(t) * eye, np.sin(t) * eye], [-np.sin(t) * eye, np.cos(t) * eye]])
    return GroupElement(form=make_form(n, Realization.ANTIDIAGONAL), matrix=matrix)


def flow_closed_form(p: CotangentHn, t: float) -> CotangentHn:
    """Time-t map of the Riccati flow, pi-periodic in t.

    Raises:
        SingularActionError: When cos t E - sin t Y is singular, i.e. Y(t) leaves the chart.
    """
    return act_sigma_tilde(rotation_element(p.n, t), p)


def flow_linear(v: TwistorVector, t: float) -> TwistorVector:
    """(eta, xi) -> (e^{it} eta, e^{-it} xi)."""
    if v.realization != Realization.DIAGONAL:
        raise ConventionError("flow_linear acts on diagonal twistors")
    return TwistorVector(
        realization=Realization.DIAGONAL,
        upper=np.exp(1j * t) * v.upper,
        lower=np.exp(-1j * t) * v.lower,
    )


def riccati_state(p: CotangentHn) -> np.ndarray:
    """Complex state vector (vec Y, vec X)."""
    return np.concatenate([p.Y.ravel(), p.X.ravel()])


def from_riccati_state(state: np.ndarray) -> CotangentHn:
    state = np.asarray(state, dtype=complex)
    n = int(round(np.sqrt(state.size / 2)))
    if n < 1 or 2 * n * n != state.size:
        raise DimensionError(f"state of size {state.size} is not (vec Y, vec X)")
    return CotangentHn(Y=state[: n * n].reshape(n, n), X=state[n * n :].reshape(n, n))


def riccati_rhs(state: np.ndarray) -> np.ndarray:
    """hamiltonian_field on flattened states, for integrate_rk4."""
    y_dot, x_dot = hamiltonian_field(from_riccati_state(state))
    return np.concatenate([y_dot.ravel(), x_dot.ravel()])


def linear_rhs(state: np.ndarray) -> np.ndarray:
    """Field of I++ on stacked (eta, xi)."""
    n = state.size // 2
    return 1j * np.concatenate([state[:n], -state[n:]])

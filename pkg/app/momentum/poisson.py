"""Flat Poisson bracket on C^2n from central differences.

Partials along the real and imaginary axis of each coordinate are combined
into Wirtinger derivatives d/dz = (d/dx - i d/dy)/2 and d/dz~ = (d/dx + i d/dy)/2.
"""

from typing import Callable, Optional, Tuple

import numpy as np

from app.exceptions import ConventionError
from app.schema import Realization
from app.twistor_core.types import TwistorVector


ArrayFunction = Callable[[np.ndarray], float]
TwistorFunction = Callable[[TwistorVector], float]


def default_step(w: np.ndarray) -> float:
    return 1e-6 * (1.0 + float(np.linalg.norm(w)))


def wirtinger_gradient(
    f: ArrayFunction, w: np.ndarray, h: Optional[float] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """(df/dw, df/dw~) at w by central differences."""
    w = np.asarray(w, dtype=complex)
    h = default_step(w) if h is None else h
    d_holo = np.empty(w.size, dtype=complex)
    d_anti = np.empty(w.size, dtype=complex)
    for m in range(w.size):
        e = np.zeros(w.size, dtype=complex)
        e[m] = h
        fx = (complex(f(w + e)) - complex(f(w - e))) / (2.0 * h)
        fy = (complex(f(w + 1j * e)) - complex(f(w - 1j * e))) / (2.0 * h)
        d_holo[m] = 0.5 * (fx - 1j * fy)
        d_anti[m] = 0.5 * (fx + 1j * fy)
    return d_holo, d_anti


def _signature(size: int) -> np.ndarray:
    n = size // 2
    return np.concatenate([np.ones(n), -np.ones(n)])


def bracket_arrays(
    f: ArrayFunction, g: ArrayFunction, w: np.ndarray, h: Optional[float] = None
) -> complex:
    """i sum_m phi_m (df/dw~_m dg/dw_m - dg/dw~_m df/dw_m)."""
    df, df_bar = wirtinger_gradient(f, w, h)
    dg, dg_bar = wirtinger_gradient(g, w, h)
    phi = _signature(np.asarray(w).size)
    return complex(1j * np.sum(phi * (df_bar * dg - dg_bar * df)))


def hamiltonian_velocity(
    hamiltonian: ArrayFunction, w: np.ndarray, h: Optional[float] = None
) -> np.ndarray:
    """w' = {H, w} = i phi dH/dw~, i.e. eta' = i dH/deta~ and xi' = -i dH/dxi~."""
    _, d_anti = wirtinger_gradient(hamiltonian, w, h)
    return 1j * _signature(d_anti.size) * d_anti


def _on_arrays(f: TwistorFunction) -> ArrayFunction:
    return lambda w: f(TwistorVector.from_stacked(w, Realization.DIAGONAL))


def _require_diagonal(v: TwistorVector):
    if v.realization != Realization.DIAGONAL:
        raise ConventionError("the flat bracket is taken in (eta, xi) coordinates")


def poisson_bracket_flat(
    f: TwistorFunction, g: TwistorFunction, v: TwistorVector, h: Optional[float] = None
) -> float:
    """{f, g} at v for real functions of a diagonal twistor.

    Examples:
        {Re eta_1, Im eta_1} = 1/2 and {|eta_1|^2, |xi_1|^2} = 0.
    """
    _require_diagonal(v)
    return bracket_arrays(_on_arrays(f), _on_arrays(g), v.stacked, h).real


def twistor_field(hamiltonian: TwistorFunction, v: TwistorVector, h: Optional[float] = None) -> TwistorVector:
    """Hamiltonian vector field of H at v as a tangent twistor."""
    _require_diagonal(v)
    velocity = hamiltonian_velocity(_on_arrays(hamiltonian), v.stacked, h)
    return TwistorVector.from_stacked(velocity, Realization.DIAGONAL)

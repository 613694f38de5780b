"""Invariants of the twistor and cotangent spaces."""

from enum import Enum
from typing import Callable, Dict, Union

import numpy as np

from app.exceptions import ConventionError
from app.momentum.types import CotangentHn, CotangentUn
from app.schema import Realization
from app.twistor_core.types import TwistorVector


Point = Union[TwistorVector, CotangentUn, CotangentHn]


def _twistor(v, realization: Realization) -> TwistorVector:
    if not isinstance(v, TwistorVector) or v.realization != realization:
        raise ConventionError(f"expected a {realization.value} twistor")
    return v


def _norm2(v: TwistorVector) -> float:
    return float(np.vdot(v.upper, v.upper).real + np.vdot(v.lower, v.lower).real)


def i_plus_plus(v: TwistorVector) -> float:
    """eta^+ eta + xi^+ xi."""
    return _norm2(_twistor(v, Realization.DIAGONAL))


def i_tilde_plus_plus(v: TwistorVector) -> float:
    """upsilon^+ upsilon + zeta^+ zeta."""
    return _norm2(_twistor(v, Realization.ANTIDIAGONAL))


def i_zero(p: CotangentUn) -> float:
    """-2i Tr rho."""
    return float((-2j * np.trace(p.rho)).real)


def i_tilde_zero(p: CotangentHn) -> float:
    """Tr(X (E + Y^2))."""
    eye = np.eye(p.n)
    return float(np.trace(p.X @ (eye + p.Y @ p.Y)).real)


def i_plus(v: TwistorVector) -> np.ndarray:
    """Matrix invariant eta eta^+."""
    v = _twistor(v, Realization.DIAGONAL)
    return np.outer(v.upper, v.upper.conj())


def i_minus(v: TwistorVector) -> np.ndarray:
    """Matrix invariant xi xi^+."""
    v = _twistor(v, Realization.DIAGONAL)
    return np.outer(v.lower, v.lower.conj())


class Observable(str, Enum):
    I_PLUS_PLUS = "I++"
    I_ZERO = "I0"
    I_TILDE_PLUS_PLUS = "I~++"
    I_TILDE_ZERO = "I~0"


_OBSERVABLES: Dict[Observable, Callable[[Point], float]] = {
    Observable.I_PLUS_PLUS: i_plus_plus,
    Observable.I_ZERO: i_zero,
    Observable.I_TILDE_PLUS_PLUS: i_tilde_plus_plus,
    Observable.I_TILDE_ZERO: i_tilde_zero,
}


def observable(name: Union[Observable, str], point: Point) -> float:
    """Evaluate a named invariant on the space it lives on."""
    return _OBSERVABLES[Observable(name)](point)

"""Momentum maps onto nilpotent elements of u(n,n).

Both twistor maps have the shape -i w w^+ phi, and both cotangent maps the
shape -c F M F^+ phi for an isotropic frame F, which is why their images
square to zero on the null cone.
"""

import numpy as np

from app.exceptions import ConventionError
from app.momentum.types import CotangentHn, CotangentUn
from app.schema import Realization
from app.twistor_core.forms import make_form
from app.twistor_core.types import AlgebraElement, TwistorVector


def _require(v: TwistorVector, realization: Realization):
    if v.realization != realization:
        raise ConventionError(
            f"expected a {realization.value} twistor, got {v.realization.value}"
        )


def j_pm(v: TwistorVector) -> AlgebraElement:
    """i [[-eta eta^+, eta xi^+], [-xi eta^+, xi xi^+]]."""
    _require(v, Realization.DIAGONAL)
    eta, xi = v.upper, v.lower
    matrix = 1j * np.block(
        [
            [-np.outer(eta, eta.conj()), np.outer(eta, xi.conj())],
            [-np.outer(xi, eta.conj()), np.outer(xi, xi.conj())],
        ]
    )
    return AlgebraElement(form=make_form(v.n, Realization.DIAGONAL), matrix=matrix)


def j_pm_tilde(v: TwistorVector) -> AlgebraElement:
    """[[upsilon zeta^+, -upsilon upsilon^+], [zeta zeta^+, -zeta upsilon^+]]."""
    _require(v, Realization.ANTIDIAGONAL)
    ups, zeta = v.upper, v.lower
    matrix = np.block(
        [
            [np.outer(ups, zeta.conj()), -np.outer(ups, ups.conj())],
            [np.outer(zeta, zeta.conj()), -np.outer(zeta, ups.conj())],
        ]
    )
    return AlgebraElement(form=make_form(v.n, Realization.ANTIDIAGONAL), matrix=matrix)


def j0(p: CotangentUn, tol: float = 1e-8) -> AlgebraElement:
    """[[-Z rho Z^+, Z rho], [(Z rho)^+, rho]]."""
    p.check(tol)
    z, rho = p.Z, p.rho
    z_rho = z @ rho
    matrix = np.block([[-z_rho @ z.conj().T, z_rho], [z_rho.conj().T, rho]])
    return AlgebraElement(form=make_form(p.n, Realization.DIAGONAL), matrix=matrix)


def j0_tilde(p: CotangentHn, tol: float = 1e-8) -> AlgebraElement:
    """[[Y X, -Y X Y], [X, -X Y]]."""
    p.check(tol)
    y, x = p.Y, p.X
    yx = y @ x
    matrix = np.block([[yx, -yx @ y], [x, -x @ y]])
    return AlgebraElement(form=make_form(p.n, Realization.ANTIDIAGONAL), matrix=matrix)

"""Actions of U(n,n) on U(n), T*U(n) and H(n) x H(n)."""

import numpy as np

from app.exceptions import ConventionError, DimensionError
from app.momentum.types import CotangentHn, CotangentUn
from app.schema import Realization
from app.twistor_core.forms import solve_right
from app.twistor_core.types import GroupElement, as_square_matrix


def _blocks_for(g: GroupElement, realization: Realization, n: int):
    if g.form.realization != realization:
        raise ConventionError(
            f"expected a group element for the {realization.value} form, "
            f"got {g.form.realization.value}"
        )
    if g.form.n != n:
        raise DimensionError(f"group element acts on n={g.form.n}, point has n={n}")
    return g.blocks()


def act_on_un(g: GroupElement, z: np.ndarray) -> np.ndarray:
    """Z' = (A Z + B)(C Z + D)^-1."""
    z = as_square_matrix(z, "Z")
    a, b, c, d = _blocks_for(g, Realization.DIAGONAL, z.shape[0])
    return solve_right(a @ z + b, c @ z + d)


def act_lambda(g: GroupElement, p: CotangentUn) -> CotangentUn:
    """Lambda_g(Z, rho) = ((A Z + B) K^-1, K rho K^+) with K = C Z + D."""
    a, b, c, d = _blocks_for(g, Realization.DIAGONAL, p.n)
    k = c @ p.Z + d
    return CotangentUn(Z=solve_right(a @ p.Z + b, k), rho=k @ p.rho @ k.conj().T)


def act_sigma_tilde(g: GroupElement, p: CotangentHn) -> CotangentHn:
    """sigma~_g(Y, X) = ((A Y + B) K^-1, K X K^+) with K = C Y + D.

    Raises:
        SingularActionError: Off the chart, where C Y + D is singular.
    """
    a, b, c, d = _blocks_for(g, Realization.ANTIDIAGONAL, p.n)
    k = c @ p.Y + d
    return CotangentHn(Y=solve_right(a @ p.Y + b, k), X=k @ p.X @ k.conj().T)

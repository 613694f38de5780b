"""Kustaanheimo-Stiefel sections, the submersion R and the two regularizations.

Points of the rank-one stratum carry X = zeta zeta^+ with X positive
semi-definite; the submersion sends them to the null twistor (Y zeta, zeta),
defined up to a global phase. The Cayley route reaches the same class through
t_star_c, the cotangent momentum map and the inverse twistor momentum map.
"""

from typing import Optional

import numpy as np

from app.exceptions import ConventionError, DomainError, MembershipError
from app.momentum.maps import j0
from app.momentum.types import CotangentHn
from app.regularize.cayley import t_star_c
from app.regularize.classes import canonical_representative, invert_j_pm, rank_one_factor
from app.schema import Realization
from app.twistor_core.forms import null_invariant
from app.twistor_core.types import TwistorVector


def check_section_domain(v: TwistorVector, tol: float) -> float:
    if v.realization != Realization.ANTIDIAGONAL:
        raise ConventionError("sections take anti-diagonal twistors (upsilon, zeta)")
    zeta_norm2 = float(np.vdot(v.lower, v.lower).real)
    if zeta_norm2 == 0.0:
        raise DomainError("zeta vanishes; the point lies outside the section domain")
    scale = 1.0 + float(np.vdot(v.stacked, v.stacked).real)
    if abs(null_invariant(v)) > tol * scale:
        raise MembershipError(f"twistor is not null (I~+- = {null_invariant(v):.3g})")
    return zeta_norm2


def ks_section(v: TwistorVector, tol: float = 1e-10) -> CotangentHn:
    """Y = (zeta upsilon^+ + upsilon zeta^+ - Re(upsilon^+ zeta) E) / zeta^+ zeta, X = zeta zeta^+.

    On null twistors Y zeta = upsilon, and the output is unchanged under
    (upsilon, zeta) -> (lambda upsilon, lambda zeta) with |lambda| = 1.
    """
    zeta_norm2 = check_section_domain(v, tol)
    ups, zeta = v.upper, v.lower
    mixed = np.outer(zeta, ups.conj()) + np.outer(ups, zeta.conj())
    trace_part = np.vdot(ups, zeta).real * np.eye(v.n)
    return CotangentHn(Y=(mixed - trace_part) / zeta_norm2, X=np.outer(zeta, zeta.conj()))


def ks_section_rank_one(v: TwistorVector) -> CotangentHn:
    """Y = upsilon upsilon^+ / zeta^+ zeta on the domain upsilon^+ zeta != 0.

    This gives Y zeta = upsilon (upsilon^+ zeta) / zeta^+ zeta, so it is a
    section only where upsilon^+ zeta = zeta^+ zeta. ``section_residual``
    measures the defect elsewhere.
    """
    if v.realization != Realization.ANTIDIAGONAL:
        raise ConventionError("sections take anti-diagonal twistors (upsilon, zeta)")
    ups, zeta = v.upper, v.lower
    zeta_norm2 = float(np.vdot(zeta, zeta).real)
    if zeta_norm2 == 0.0 or np.vdot(ups, zeta) == 0:
        raise DomainError("needs zeta != 0 and upsilon^+ zeta != 0")
    return CotangentHn(Y=np.outer(ups, ups.conj()) / zeta_norm2, X=np.outer(zeta, zeta.conj()))


def section_residual(p: CotangentHn, v: TwistorVector) -> float:
    """|Y zeta - upsilon|."""
    return float(np.linalg.norm(p.Y @ v.lower - v.upper))


def submersion_r(p: CotangentHn, tol: float = 1e-10) -> TwistorVector:
    """(Y zeta, zeta) with zeta = rank_one_factor(X)."""
    zeta = rank_one_factor(p.X, tol)
    return TwistorVector(realization=Realization.ANTIDIAGONAL, upper=p.Y @ zeta, lower=zeta)


def k_reg(p: CotangentHn, tol: float = 1e-10) -> TwistorVector:
    """Kustaanheimo-Stiefel regularization: canonical (upsilon, zeta) class of R(p)."""
    return canonical_representative(submersion_r(p, tol))


def c_reg(p: CotangentHn, tol: Optional[float] = None) -> TwistorVector:
    """Cayley regularization: canonical (eta, xi) class of the inverse twistor momentum of J0(T*_C p).

    It agrees with the Cayley image C k_reg(p) up to a phase.
    """
    return invert_j_pm(j0(t_star_c(p)), tol)


def one_form_tilde0(p: CotangentHn, dy: np.ndarray) -> float:
    """-Tr(X dY) on a tangent vector (dY, dX)."""
    return float(-np.trace(p.X @ np.asarray(dy)).real)


def one_form_tilde_pm(v: TwistorVector, dv: TwistorVector) -> float:
    """upsilon^+ d zeta - zeta^+ d upsilon; real along null curves."""
    value = np.vdot(v.upper, dv.lower) - np.vdot(v.lower, dv.upper)
    return float(value.real)

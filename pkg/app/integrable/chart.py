"""Action-angle charts on the open set of C^2n where no coordinate vanishes.

A chart is an invertible real matrix rho with inverse kappa. Actions are
I = rho (|eta|^2, -|xi|^2) and angles psi = kappa^T (arg eta, arg xi), which
makes {I_r, psi_s} = delta_rs for the flat bracket.
"""

from typing import List, Sequence, Tuple

import numpy as np
from pydantic import Field, model_validator

from app.exceptions import ConventionError, DimensionError, DomainError, MembershipError
from app.schema import Realization
from app.twistor_core.types import ArrayModel, TwistorVector


class ActionAngleChart(ArrayModel):
    n: int = Field(..., ge=1, description="Half-dimension")
    rho: np.ndarray = Field(..., description="2n x 2n action matrix")
    kappa: np.ndarray = Field(..., description="Inverse of rho")

    @model_validator(mode="before")
    @classmethod
    def fill_inverse(cls, data):
        if not isinstance(data, dict):
            return data
        rho = np.array(data.get("rho"), dtype=float)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] % 2:
            raise DimensionError(f"chart matrix must be 2n x 2n, got shape {rho.shape}")
        if np.linalg.cond(rho) > 1e12:
            raise MembershipError("chart matrix must be invertible")
        rho.setflags(write=False)
        kappa = data.get("kappa")
        kappa = np.linalg.inv(rho) if kappa is None else np.array(kappa, dtype=float)
        kappa.setflags(write=False)
        return {**data, "n": data.get("n", rho.shape[0] // 2), "rho": rho, "kappa": kappa}

    @model_validator(mode="after")
    def check_inverse(self):
        if self.rho.shape != (2 * self.n, 2 * self.n):
            raise DimensionError(f"chart for n={self.n} must be {2 * self.n}x{2 * self.n}")
        residual = np.linalg.norm(self.kappa @ self.rho - np.eye(2 * self.n))
        if residual > 1e-9 * np.linalg.cond(self.rho):
            raise MembershipError("kappa is not the inverse of rho")
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "ActionAngleChart":
        return cls(rho=np.asarray(rows, dtype=float))


def standard_chart(n: int) -> ActionAngleChart:
    """Rows |eta_1|^2..|eta_{n-1}|^2, -|xi_1|^2..-|xi_{n-1}|^2, then I++ and I+-.

    For n = 1 only the last two rows remain.
    """
    if n < 1:
        raise DimensionError(f"half-dimension must be positive, got {n}")
    rows: List[np.ndarray] = []
    for j in range(n - 1):
        row = np.zeros(2 * n)
        row[j] = 1.0
        rows.append(row)
    for j in range(n - 1):
        row = np.zeros(2 * n)
        row[n + j] = 1.0
        rows.append(row)
    rows.append(np.concatenate([np.ones(n), -np.ones(n)]))
    rows.append(np.ones(2 * n))
    return ActionAngleChart.from_rows(rows)


def _check(chart: ActionAngleChart, v: TwistorVector):
    if v.realization != Realization.DIAGONAL:
        raise ConventionError("action-angle coordinates take (eta, xi)")
    if v.n != chart.n:
        raise DimensionError(f"chart for n={chart.n} applied to a twistor with n={v.n}")


def signed_moduli(v: TwistorVector) -> np.ndarray:
    """(|eta|^2, -|xi|^2)."""
    return np.concatenate([np.abs(v.upper) ** 2, -np.abs(v.lower) ** 2])


def actions(chart: ActionAngleChart, v: TwistorVector) -> np.ndarray:
    _check(chart, v)
    return chart.rho @ signed_moduli(v)


def angles(chart: ActionAngleChart, v: TwistorVector, wrap: bool = True) -> np.ndarray:
    """psi = kappa^T (arg eta, arg xi), reported in [0, 2 pi) unless wrap is False.

    Raises:
        DomainError: If any coordinate of v vanishes.
    """
    _check(chart, v)
    stacked = v.stacked
    if np.any(stacked == 0):
        raise DomainError("angles are undefined where a coordinate vanishes")
    psi = chart.kappa.T @ np.angle(stacked)
    return np.mod(psi, 2.0 * np.pi) if wrap else psi


def moduli_from_actions(chart: ActionAngleChart, values: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """(|eta|^2, |xi|^2) recovered from the actions.

    Raises:
        DomainError: If a reconstructed modulus squared is negative.
    """
    signed = chart.kappa @ np.asarray(values, dtype=float)
    moduli = np.concatenate([signed[: chart.n], -signed[chart.n :]])
    scale = tol * (1.0 + float(np.max(np.abs(moduli))))
    if np.any(moduli < -scale):
        raise DomainError("actions lie outside the image of the chart (negative modulus)")
    return np.clip(moduli, 0.0, None)


def circle_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance on the circle between angles."""
    d = np.mod(np.asarray(a) - np.asarray(b), 2.0 * np.pi)
    return np.minimum(d, 2.0 * np.pi - d)


def check_integrability(chart: ActionAngleChart, k: Sequence[int], l: Sequence[int]) -> List[bool]:
    """Per row r: sum_j (rho_rj k_j + rho_r,n+j l_j) == delta_r1.

    The monomial prod eta^k xi^l carries the phase k . arg eta + l . arg xi,
    whose bracket with I_r is exactly that row sum.
    """
    exponents = np.concatenate([np.asarray(k, dtype=float), np.asarray(l, dtype=float)])
    if exponents.size != 2 * chart.n:
        raise DimensionError(f"need {chart.n} exponents for each of eta and xi")
    target = np.zeros(2 * chart.n)
    target[0] = 1.0
    return [bool(abs(x - t) <= 1e-9) for x, t in zip(chart.rho @ exponents, target)]


def torus_momentum(chart: ActionAngleChart, v: TwistorVector) -> np.ndarray:
    """(I_2, ..., I_2n)."""
    return actions(chart, v)[1:]


def default_integrable(n: int) -> Tuple[ActionAngleChart, List[int], List[int]]:
    """A chart with an integer exponent vector satisfying every integrability row.

    For n >= 2 this is the standard chart with eta_1 eta~_n; for n = 1 the
    chart with rows (1, 0), (1, 1) and the monomial eta xi~.
    """
    if n < 1:
        raise DimensionError(f"half-dimension must be positive, got {n}")
    if n == 1:
        return ActionAngleChart.from_rows([[1.0, 0.0], [1.0, 1.0]]), [1], [-1]
    k = [0] * n
    k[0], k[-1] = 1, -1
    return standard_chart(n), k, [0] * n

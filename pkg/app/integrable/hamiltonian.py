"""The perturbed Hamiltonian H = h0 + g0 (prod eta^k xi^l + c.c.) and its pullbacks.

Moduli arguments of h0 and g0 are (|eta_1|^2, ..., |eta_n|^2, |xi_1|^2, ..., |xi_n|^2).
A negative exponent stands for the conjugate coordinate: eta^-2 means eta~^2.
"""

from typing import Callable, List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.dynamics.kepler import mr_vectors_n2, n_plus_minus
from app.exceptions import ConventionError, DimensionError, DomainError
from app.integrable.chart import ActionAngleChart, actions
from app.integrable.expression import ModuliFunction, compile_expression
from app.momentum.poisson import bracket_arrays, hamiltonian_velocity
from app.momentum.types import CotangentHn
from app.schema import Realization
from app.twistor_core.types import TwistorVector


# |eta|^2, |xi|^2 in terms of (R0, R3, M0, M3) for n = 2.
INTEGRALS_TO_MODULI = 0.5 * np.array(
    [
        [1, 1, -1, -1],
        [1, -1, -1, 1],
        [1, 1, 1, 1],
        [1, -1, 1, -1],
    ],
    dtype=float,
)


class ExponentVector(BaseModel):
    k: List[int] = Field(..., description="Exponents of eta")
    l: List[int] = Field(..., description="Exponents of xi")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_lengths(self):
        if len(self.k) != len(self.l) or not self.k:
            raise DimensionError(f"need n exponents for eta and for xi, got {len(self.k)} and {len(self.l)}")
        return self

    @property
    def n(self) -> int:
        return len(self.k)


class PerturbedSpec(BaseModel):
    h0: Callable[[np.ndarray], float]
    g0: Callable[[np.ndarray], float]
    exponents: ExponentVector

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def n(self) -> int:
        return self.exponents.n

    @classmethod
    def from_expressions(cls, h0: str, g0: str, k: Sequence[int], l: Sequence[int]) -> "PerturbedSpec":
        n = len(k)
        return cls(
            h0=compile_expression(h0, n),
            g0=compile_expression(g0, n),
            exponents=ExponentVector(k=list(k), l=list(l)),
        )


def _power(z: complex, exponent: int) -> complex:
    return z**exponent if exponent >= 0 else np.conj(z) ** (-exponent)


def monomial(exponents: ExponentVector, w: np.ndarray) -> complex:
    """prod_j eta_j^k_j xi_j^l_j on stacked (eta, xi)."""
    n = exponents.n
    value = 1.0 + 0.0j
    for j in range(n):
        value *= _power(w[j], exponents.k[j]) * _power(w[n + j], exponents.l[j])
    return complex(value)


def moduli(w: np.ndarray) -> np.ndarray:
    return np.abs(np.asarray(w)) ** 2


def eval_h_array(spec: PerturbedSpec, w: np.ndarray) -> float:
    m = moduli(w)
    return spec.h0(m) + 2.0 * spec.g0(m) * monomial(spec.exponents, w).real


def _check(spec: PerturbedSpec, v: TwistorVector):
    if v.realization != Realization.DIAGONAL:
        raise ConventionError("the perturbed Hamiltonian is defined on (eta, xi)")
    if v.n != spec.n:
        raise DimensionError(f"spec for n={spec.n} applied to a twistor with n={v.n}")


def eval_h(spec: PerturbedSpec, v: TwistorVector) -> float:
    _check(spec, v)
    return eval_h_array(spec, v.stacked)


def perturbed_rhs(spec: PerturbedSpec, h: float = 1e-6) -> Callable[[np.ndarray], np.ndarray]:
    """Finite-difference Hamiltonian field of H on stacked twistors, for integrate_rk4."""

    def rhs(w: np.ndarray) -> np.ndarray:
        step = h * (1.0 + float(np.linalg.norm(w)))
        return hamiltonian_velocity(lambda u: eval_h_array(spec, u), w, step)

    return rhs


def perturbed_field(spec: PerturbedSpec, v: TwistorVector, h: float = 1e-6) -> TwistorVector:
    _check(spec, v)
    velocity = perturbed_rhs(spec, h)(v.stacked)
    return TwistorVector.from_stacked(velocity, Realization.DIAGONAL)


def bracket_with_actions(spec: PerturbedSpec, chart: ActionAngleChart, v: TwistorVector) -> np.ndarray:
    """{H, I_r} for every row of the chart."""
    _check(spec, v)
    w = v.stacked

    def action(r: int) -> Callable[[np.ndarray], float]:
        return lambda u: float(actions(chart, TwistorVector.from_stacked(u, Realization.DIAGONAL))[r])

    return np.array(
        [bracket_arrays(lambda u: eval_h_array(spec, u), action(r), w).real for r in range(2 * chart.n)]
    )


def _pairs(exponents: Sequence[int]) -> List[tuple]:
    if sum(exponents) != 0:
        raise DomainError(f"exponents {list(exponents)} are not paired (their sum is not zero)")
    positive = [j for j, e in enumerate(exponents) for _ in range(max(e, 0))]
    negative = [j for j, e in enumerate(exponents) for _ in range(max(-e, 0))]
    return list(zip(positive, negative))


def eval_h_tilde(p: CotangentHn, spec: PerturbedSpec) -> float:
    """H~ on H(n) x H(n): h0, g0 on diag(N-), diag(N+) and the monomial in N entries.

    eta_i eta~_j = N-_ij and xi_i xi~_j = N+_ij through the regularization, so a
    paired monomial becomes a product of entries of N- and N+.
    """
    if p.n != spec.n:
        raise DimensionError(f"spec for n={spec.n} applied to a point with n={p.n}")
    n_plus, n_minus = n_plus_minus(p)
    m = np.concatenate([np.diag(n_minus).real, np.diag(n_plus).real])
    value = 1.0 + 0.0j
    for i, j in _pairs(spec.exponents.k):
        value *= n_minus[i, j]
    for i, j in _pairs(spec.exponents.l):
        value *= n_plus[i, j]
    return spec.h0(m) + 2.0 * spec.g0(m) * value.real


def eval_h_tilde_n2(
    y: np.ndarray,
    x: np.ndarray,
    h0_tilde: ModuliFunction,
    g0_tilde: ModuliFunction,
    k: int,
    l: int,
    sigma: int,
    sigma_prime: int,
) -> float:
    """H~ in Pauli coordinates of n = 2 rank-one data.

    h0_tilde and g0_tilde take (R0, R3, M0, M3); the perturbation is
    (R_s - M_s)^k (R_s' + M_s')^l + c.c. with R_+- = R1 +- i R2.
    """
    if k < 0 or l < 0:
        raise DomainError("exponents of the n = 2 form are nonnegative")
    if sigma not in (1, -1) or sigma_prime not in (1, -1):
        raise DomainError("sigma and sigma' are +1 or -1")
    m_vec, r_vec, m0, r0 = mr_vectors_n2(y, x)
    args = np.array([r0, r_vec[2], m0, m_vec[2]])

    def ladder(a: np.ndarray, s: int) -> complex:
        return complex(a[0] + s * 1j * a[1])

    term = (ladder(r_vec, sigma) - ladder(m_vec, sigma)) ** k * (
        ladder(r_vec, sigma_prime) + ladder(m_vec, sigma_prime)
    ) ** l
    return h0_tilde(args) + 2.0 * g0_tilde(args) * term.real

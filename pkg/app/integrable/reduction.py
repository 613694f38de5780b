"""One-degree-of-freedom reduction on a level set of the torus momentum.

With c = (I_2, ..., I_2n) fixed and an integrable monomial, the Hamiltonian
reduces to H_red = H0(I) + 2 W(I) cos psi, where W = g0 prod |eta|^|k| |xi|^|l|
is the signed amplitude and G0 = W^2. Hamilton's equations read
I' = 2 W sin psi and psi' = dH0/dI + 2 dW/dI cos psi.
"""

from typing import Callable, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.integrate import quad
from scipy.optimize import brentq

from app.exceptions import DomainError, QuadratureError
from app.integrable.chart import ActionAngleChart, moduli_from_actions
from app.integrable.hamiltonian import PerturbedSpec
from app.logger import logger


# Angular width, in the cosine parametrization, held constant at each turning point.
TURNING_BAND = 1e-3

def _moduli(chart: ActionAngleChart, i1: float, c: Sequence[float]) -> np.ndarray:
    values = np.concatenate([[i1], np.asarray(c, dtype=float)])
    if values.size != 2 * chart.n:
        raise DomainError(f"need {2 * chart.n - 1} torus momenta, got {values.size - 1}")
    return moduli_from_actions(chart, values)


def reduced_terms(spec: PerturbedSpec, chart: ActionAngleChart, i1: float, c: Sequence[float]) -> Tuple[float, float]:
    """(H0, W) at action I_1 on the level set c."""
    m = _moduli(chart, i1, c)
    exponents = np.abs(np.concatenate([spec.exponents.k, spec.exponents.l]))
    amplitude = spec.g0(m) * float(np.prod(np.sqrt(m) ** exponents))
    return spec.h0(m), amplitude


def reduced_h(spec: PerturbedSpec, chart: ActionAngleChart, i1: float, psi1: float, c: Sequence[float]) -> float:
    """H0 + 2 W cos psi.

    Raises:
        DomainError: If (I_1, c) reconstructs a negative modulus squared.
    """
    h0, w = reduced_terms(spec, chart, i1, c)
    return h0 + 2.0 * w * np.cos(psi1)


def _derivatives(spec, chart, i1, c, h) -> Tuple[float, float, float]:
    step = h * (1.0 + abs(i1))
    h_up, w_up = reduced_terms(spec, chart, i1 + step, c)
    h_down, w_down = reduced_terms(spec, chart, i1 - step, c)
    _, w = reduced_terms(spec, chart, i1, c)
    return (h_up - h_down) / (2.0 * step), (w_up - w_down) / (2.0 * step), w


def reduced_field(
    spec: PerturbedSpec,
    chart: ActionAngleChart,
    state: Tuple[float, float],
    c: Sequence[float],
    h: float = 1e-6,
) -> Tuple[float, float]:
    """(I', psi') = (2 W sin psi, dH0/dI + 2 dW/dI cos psi)."""
    i1, psi1 = state
    dh0, dw, w = _derivatives(spec, chart, i1, c, h)
    return 2.0 * w * np.sin(psi1), dh0 + 2.0 * dw * np.cos(psi1)


def reduced_field_printed(
    spec: PerturbedSpec,
    chart: ActionAngleChart,
    state: Tuple[float, float],
    c: Sequence[float],
    h: float = 1e-6,
) -> Tuple[float, float]:
    """Variant with psi' = dH0/dI + dG0/dI cos psi, without the 1/sqrt(G0) factor.

    It agrees with reduced_field only where G0 = 1 and is kept for comparison.
    """
    i1, psi1 = state
    dh0, dw, w = _derivatives(spec, chart, i1, c, h)
    return 2.0 * w * np.sin(psi1), dh0 + 2.0 * w * dw * np.cos(psi1)


def reduced_rhs(
    spec: PerturbedSpec, chart: ActionAngleChart, c: Sequence[float], h: float = 1e-6
) -> Callable[[np.ndarray], np.ndarray]:
    """reduced_field on state vectors (I_1, psi_1), for integrate_rk4."""

    def rhs(state: np.ndarray) -> np.ndarray:
        i_dot, psi_dot = reduced_field(spec, chart, (state[0].real, state[1].real), c, h)
        return np.array([i_dot, psi_dot], dtype=complex)

    return rhs


class Libration(BaseModel):
    """Turning points a < b of I_1, the energy and the half period."""

    lower: float
    upper: float
    energy: float
    half_period: float

    model_config = ConfigDict(frozen=True)

    @property
    def period(self) -> float:
        return 2.0 * self.half_period

    @property
    def degenerate(self) -> bool:
        return self.half_period == 0.0


def _radicand_fn(spec, chart, c, energy) -> Callable[[float], float]:
    def radicand(i1: float) -> float:
        try:
            h0, w = reduced_terms(spec, chart, i1, c)
        except DomainError:
            return -1.0
        return 4.0 * w * w - (energy - h0) ** 2

    return radicand


def _turning_point(radicand, start: float, direction: float, scale: float, max_doublings: int) -> float:
    step = 1e-3 * scale
    inside = start
    for _ in range(max_doublings):
        candidate = start + direction * step
        if radicand(candidate) < 0:
            if radicand(inside) <= 0:
                return inside
            lo, hi = sorted((inside, candidate))
            return brentq(radicand, lo, hi, xtol=1e-14, rtol=1e-14)
        inside = candidate
        step *= 2.0
    raise QuadratureError(f"no turning point found within {step:.3g} of I = {start:.6g}")


def _time_to(radicand, lower: float, upper: float, theta: float) -> float:
    """Time for I to move from the lower turning point to a + (b - a)(1 - cos theta)/2."""

    def integrand(t: float) -> float:
        # The ratio is 0/0 at both turning points; hold it at the band edge.
        t = min(max(t, TURNING_BAND), np.pi - TURNING_BAND)
        x = lower + 0.5 * (upper - lower) * (1.0 - np.cos(t))
        r = radicand(x)
        if r <= 0:
            return 0.0
        return float(np.sqrt((x - lower) * (upper - x) / r))

    points = [p for p in (TURNING_BAND, np.pi - TURNING_BAND) if 0.0 < p < theta]
    value, _ = quad(integrand, 0.0, theta, epsabs=1e-12, epsrel=1e-11, limit=200, points=points or None)
    return value


def libration_bounds(
    spec: PerturbedSpec,
    chart: ActionAngleChart,
    i1: float,
    psi1: float,
    c: Sequence[float],
    max_doublings: int = 60,
) -> Tuple[float, float]:
    """Roots a <= I_1 <= b of the radicand 4 G0 - (E - H0)^2 around the initial action.

    Raises:
        QuadratureError: If the radicand is negative at the start or a root cannot be bracketed.
    """
    energy = reduced_h(spec, chart, i1, psi1, c)
    radicand = _radicand_fn(spec, chart, c, energy)
    _, w = reduced_terms(spec, chart, i1, c)
    start = radicand(i1)
    if start < -1e-12 * (1.0 + 4.0 * w * w):
        raise QuadratureError(f"radicand is negative at the initial state ({start:.3g})")
    if w == 0.0:
        return i1, i1
    scale = 1.0 + abs(i1) + abs(w)
    return (
        _turning_point(radicand, i1, -1.0, scale, max_doublings),
        _turning_point(radicand, i1, 1.0, scale, max_doublings),
    )


def libration(
    spec: PerturbedSpec, chart: ActionAngleChart, i1: float, psi1: float, c: Sequence[float]
) -> Libration:
    energy = reduced_h(spec, chart, i1, psi1, c)
    lower, upper = libration_bounds(spec, chart, i1, psi1, c)
    if upper - lower <= 1e-12 * (1.0 + abs(i1)):
        return Libration(lower=lower, upper=upper, energy=energy, half_period=0.0)
    radicand = _radicand_fn(spec, chart, c, energy)
    half = _time_to(radicand, lower, upper, np.pi)
    logger.debug(f"libration I in [{lower:.12g}, {upper:.12g}], half period {half:.12g}")
    return Libration(lower=lower, upper=upper, energy=energy, half_period=half)


def libration_period(
    spec: PerturbedSpec, chart: ActionAngleChart, i1: float, psi1: float, c: Sequence[float]
) -> float:
    """Full period of I_1; zero for a degenerate libration."""
    return libration(spec, chart, i1, psi1, c).period


def quadrature_solve(
    spec: PerturbedSpec,
    chart: ActionAngleChart,
    i1: float,
    psi1: float,
    c: Sequence[float],
    t_end: float,
    samples: int = 200,
) -> Tuple[np.ndarray, np.ndarray]:
    """Sample I_1(t) on [0, t_end] from the energy integral.

    Time along the libration is t = integral dI / sqrt(4 G0 - (E - H0)^2);
    I_1 moves up while 2 W sin psi > 0 and reverses at each turning point.
    """
    times = np.linspace(0.0, t_end, samples)
    motion = libration(spec, chart, i1, psi1, c)
    if motion.degenerate:
        return times, np.full(samples, float(i1))

    lower, upper, half = motion.lower, motion.upper, motion.half_period
    radicand = _radicand_fn(spec, chart, c, motion.energy)
    ratio = np.clip(1.0 - 2.0 * (i1 - lower) / (upper - lower), -1.0, 1.0)
    offset = _time_to(radicand, lower, upper, float(np.arccos(ratio)))
    _, w = reduced_terms(spec, chart, i1, c)
    moving_up = w * np.sin(psi1) > 0 or (w * np.sin(psi1) == 0 and i1 - lower < upper - i1)
    phase0 = offset if moving_up else 2.0 * half - offset

    def action_at(u: float) -> float:
        u = u % (2.0 * half)
        if u > half:
            u = 2.0 * half - u
        if u <= 0.0:
            return lower
        if u >= half:
            return upper
        theta = brentq(lambda t: _time_to(radicand, lower, upper, t) - u, 0.0, np.pi, xtol=1e-14)
        return lower + 0.5 * (upper - lower) * (1.0 - np.cos(theta))

    return times, np.array([action_at(phase0 + t) for t in times])

"""Suites for action-angle charts, the perturbed twistor flow and the reduced quadrature."""

from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from app.conventions import BRACKET_SIGN
from app.dynamics.integrator import integrate_rk4
from app.integrable.chart import (
    ActionAngleChart,
    actions,
    angles,
    check_integrability,
    default_integrable,
)
from app.integrable.hamiltonian import PerturbedSpec, bracket_with_actions, eval_h, perturbed_rhs
from app.integrable.reduction import libration_period, quadrature_solve, reduced_h, reduced_rhs
from app.momentum.functionals import bracket_of_linear, linear_functional_eval
from app.momentum.maps import j_pm
from app.momentum.poisson import bracket_arrays, poisson_bracket_flat
from app.momentum.types import LinearFunctional
from app.schema import Realization
from app.twistor_core.forms import make_form
from app.twistor_core.sampling import random_algebra_element, random_generic_twistor, random_twistor
from app.twistor_core.types import TwistorVector
from app.verify.algebra import draw_seed
from app.verify.base import BaseSuite, SuiteContext, SuiteResult


PERTURBATION_G0 = "0.5"

# Single-degree-of-freedom reduction with constant amplitude: I(t) is a cosine.
HARMONIC = ("eta1", "0.25*(eta1*xi1)**(-0.5)")
# Amplitude sqrt(I (I - c)), so the libration is no longer harmonic.
ANHARMONIC = ("eta1 + 0.1*eta1**2", "0.2")
REDUCED_START = (2.0, 0.7, [0.5])
REDUCED_STEPS = 2000


def kepler_like_h0(n: int) -> str:
    """I++ plus a small coupling of eta_1 and xi_1."""
    terms = [f"eta{j}" for j in range(1, n + 1)] + [f"xi{j}" for j in range(1, n + 1)]
    return " + ".join(terms) + " + 0.1*eta1*xi1"


def random_chart(n: int, rng: np.random.Generator, cond_max: float = 1e3) -> ActionAngleChart:
    """Q1 diag(s) Q2 with real orthogonal Q1, Q2 and singular values in [1/cond_max, 1]."""
    q1, _ = np.linalg.qr(rng.standard_normal((2 * n, 2 * n)))
    q2, _ = np.linalg.qr(rng.standard_normal((2 * n, 2 * n)))
    s = np.exp(rng.uniform(0.0, np.log(cond_max), size=2 * n))
    return ActionAngleChart(rho=q1 @ np.diag(s / s.max()) @ q2)


def one_degree_system(h0: str, g0: str) -> Tuple[PerturbedSpec, ActionAngleChart]:
    chart, k, l = default_integrable(1)
    return PerturbedSpec.from_expressions(h0, g0, k, l), chart


def action_drift(
    spec: PerturbedSpec,
    chart: ActionAngleChart,
    v: TwistorVector,
    rows: Sequence[int],
    t_end: float,
    dt: float,
) -> float:
    """max_r max_t |I_r(t) - I_r(0)| / (1 + |I_r(0)|) along the RK4 twistor flow."""

    def row(r: int) -> Callable[[np.ndarray], float]:
        return lambda w: float(actions(chart, TwistorVector.from_stacked(w, Realization.DIAGONAL))[r])

    invariants: Dict[str, Callable[[np.ndarray], float]] = {f"I{r + 1}": row(r) for r in rows}
    traj = integrate_rk4(perturbed_rhs(spec), v.stacked, t_end, dt, invariants)
    start = actions(chart, v)
    return max(traj.drift(f"I{r + 1}") / (1.0 + abs(start[r])) for r in rows)


class CanonicalSuite(BaseSuite):
    name: str = "canonical"
    description: str = "Canonical brackets of random action-angle charts and the pulled-back bracket sign"
    tolerance_key: str = "canonical"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        size = 2 * n
        count = context.settings.flow_samples
        worst = 0.0
        for _ in range(count):
            chart = random_chart(n, rng)
            row_norms = np.linalg.norm(chart.rho, axis=1)
            column_norms = np.linalg.norm(chart.kappa, axis=0)
            action = [self._component(lambda v: actions(chart, v), r) for r in range(size)]
            angle = [self._component(lambda v: angles(chart, v, wrap=False), s) for s in range(size)]
            for _ in range(count):
                v = random_generic_twistor(n, rng)
                for r in range(size):
                    for s in range(size):
                        delta = 1.0 if r == s else 0.0
                        worst = max(
                            worst,
                            abs(poisson_bracket_flat(action[r], action[s], v))
                            / (1.0 + row_norms[r] * row_norms[s]),
                            abs(poisson_bracket_flat(angle[r], angle[s], v))
                            / (1.0 + column_norms[r] * column_norms[s]),
                            abs(poisson_bracket_flat(action[r], angle[s], v) - delta)
                            / (1.0 + row_norms[r] * column_norms[s]),
                        )
        worst = max(worst, self._pullback_sign(n, rng, context.samples))
        return self.result(context, worst, count * count, f"bracket sign {BRACKET_SIGN}")

    @staticmethod
    def _component(fn: Callable[[TwistorVector], np.ndarray], index: int) -> Callable[[TwistorVector], float]:
        return lambda v: float(fn(v)[index])

    @staticmethod
    def _pullback_sign(n: int, rng: np.random.Generator, samples: int) -> float:
        """{L1 o J, L2 o J} = BRACKET_SIGN L_[X1, X2] o J on random twistors."""
        form = make_form(n, Realization.DIAGONAL)
        worst = 0.0
        for _ in range(samples):
            l1, l2 = (LinearFunctional(generator=random_algebra_element(n, form, draw_seed(rng))) for _ in range(2))

            def pulled(functional: LinearFunctional) -> Callable[[np.ndarray], float]:
                return lambda w: linear_functional_eval(
                    functional, j_pm(TwistorVector.from_stacked(w, Realization.DIAGONAL))
                )

            v = random_twistor(n, rng)
            value = bracket_arrays(pulled(l1), pulled(l2), v.stacked).real
            expected = BRACKET_SIGN * linear_functional_eval(bracket_of_linear(l1, l2), j_pm(v))
            worst = max(worst, abs(value - expected) / (1.0 + float(np.vdot(v.stacked, v.stacked).real)))
        return worst


class TorusDriftSuite(BaseSuite):
    name: str = "torus_drift"
    description: str = "Torus momenta I_2..I_2n stay constant under an integrable perturbation"
    tolerance_key: str = "torus_drift"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        chart, k, l = default_integrable(n)
        spec = PerturbedSpec.from_expressions(kepler_like_h0(n), PERTURBATION_G0, k, l)
        rows = list(range(1, 2 * n))
        worst = 0.0
        for _ in range(context.settings.flow_samples):
            v = random_generic_twistor(n, rng)
            worst = max(
                worst,
                float(np.max(np.abs(bracket_with_actions(spec, chart, v)[1:]))),
                action_drift(
                    spec, chart, v, rows, context.settings.conservation_t_end, context.settings.perturbed_dt
                ),
            )
        return self.result(context, worst, context.settings.flow_samples)


class NegativeControlSuite(BaseSuite):
    name: str = "negative_control"
    description: str = "A monomial violating an integrability row makes that action drift"
    tolerance_key: str = "negative_control"
    lower_bound: bool = True

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        chart, _, _ = default_integrable(n)
        k = [1] + [0] * (n - 1)
        l = [0] * n
        rows: List[int] = [r for r, ok in enumerate(check_integrability(chart, k, l)) if not ok and r > 0]
        if not rows:
            return self.result(context, 0.0, 0, "no violated row")
        spec = PerturbedSpec.from_expressions(kepler_like_h0(n), PERTURBATION_G0, k, l)
        drift = min(
            action_drift(spec, chart, random_generic_twistor(n, rng), rows, context.settings.conservation_t_end,
                         context.settings.perturbed_dt)
            for _ in range(context.settings.flow_samples)
        )
        return self.result(context, drift, context.settings.flow_samples, f"violated rows {[r + 1 for r in rows]}")


class QuadratureSuite(BaseSuite):
    name: str = "quadrature"
    description: str = "Energy quadrature against the harmonic closed form and reduced RK4"
    tolerance_key: str = "quadrature"

    def execute(self, context: SuiteContext) -> SuiteResult:
        i1, psi1, c = REDUCED_START
        samples = 41
        refine = REDUCED_STEPS // (samples - 1)

        spec, chart = one_degree_system(*HARMONIC)
        times, values = quadrature_solve(spec, chart, i1, psi1, c, 2.0 * np.pi, samples)
        amplitude = 0.25
        exact = i1 + 2.0 * amplitude * (np.cos(psi1) - np.cos(psi1 + times))
        worst = float(np.max(np.abs(values - exact))) / (1.0 + abs(i1))

        for h0, g0 in (HARMONIC, ANHARMONIC):
            spec, chart = one_degree_system(h0, g0)
            period = libration_period(spec, chart, i1, psi1, c)
            times, values = quadrature_solve(spec, chart, i1, psi1, c, period, samples)
            dt = period / ((samples - 1) * refine)
            traj = integrate_rk4(reduced_rhs(spec, chart, c), np.array([i1, psi1]), period, dt)
            reference = traj.states[::refine, 0].real
            worst = max(worst, float(np.max(np.abs(values - reference))) / (1.0 + abs(i1)))
        return self.result(context, worst, samples)


class ReducedEnergySuite(BaseSuite):
    name: str = "reduced_energy"
    description: str = "Energy of the reduced RK4 flow, and H_red against H on twistors"
    tolerance_key: str = "reduced_energy"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        i1, psi1, c = REDUCED_START
        spec, chart = one_degree_system(*ANHARMONIC)
        period = libration_period(spec, chart, i1, psi1, c)
        energy = reduced_h(spec, chart, i1, psi1, c)
        traj = integrate_rk4(
            reduced_rhs(spec, chart, c),
            np.array([i1, psi1]),
            period,
            period / REDUCED_STEPS,
            {"H": lambda s: reduced_h(spec, chart, s[0].real, s[1].real, c)},
        )
        worst = traj.drift("H") / (1.0 + abs(energy))

        n = context.n
        chart_n, k, l = default_integrable(n)
        spec_n = PerturbedSpec.from_expressions(kepler_like_h0(n), PERTURBATION_G0, k, l)
        for _ in range(context.samples):
            v = random_generic_twistor(n, rng)
            values = actions(chart_n, v)
            psi = angles(chart_n, v)
            direct = eval_h(spec_n, v)
            reduced = reduced_h(spec_n, chart_n, values[0], psi[0], values[1:])
            worst = max(worst, abs(reduced - direct) / (1.0 + abs(direct)))
        return self.result(context, worst, context.samples)

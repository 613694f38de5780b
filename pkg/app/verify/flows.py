"""Suites for the regularized flow: its field, closed form, RK4 and conserved quantities."""

from typing import Dict

import numpy as np

from app.dynamics.integrator import Invariant, integrate_rk4
from app.dynamics.kepler import integrals_from_twistor, integrals_mr
from app.dynamics.riccati import (
    finite_difference_field,
    flow_closed_form,
    flow_linear,
    hamiltonian_field,
    linear_rhs,
    riccati_rhs,
    riccati_state,
    rotation_element,
)
from app.logger import logger
from app.momentum.observables import i_plus_plus, i_tilde_zero
from app.momentum.types import CotangentHn
from app.regularize.classes import class_distance
from app.regularize.ks import ks_section, submersion_r
from app.schema import Realization
from app.twistor_core.forms import change_realization, frobenius
from app.twistor_core.sampling import random_hermitian, random_null_twistor
from app.twistor_core.types import TwistorVector
from app.verify.algebra import relative
from app.verify.base import BaseSuite, SuiteContext, SuiteResult


# Skip closed-form samples whose denominator cos t E - sin t Y is worse conditioned.
CHART_CONDITION = 1e6


def small_point(n: int, rng: np.random.Generator, radius: float = 0.3) -> CotangentHn:
    """(Y, X) with ||Y||_2 <= radius, so the flow stays on the chart for t <= 1."""
    y = random_hermitian(n, rng)
    y *= radius * rng.uniform(0.5, 1.0) / max(np.linalg.norm(y, 2), 1e-12)
    return CotangentHn(Y=y, X=random_hermitian(n, rng))


def chart_condition(p: CotangentHn, t: float) -> float:
    return float(np.linalg.cond(np.cos(t) * np.eye(p.n) - np.sin(t) * p.Y))


def pair_distance(a: CotangentHn, b: CotangentHn) -> float:
    return relative(np.concatenate([a.Y, a.X]), np.concatenate([b.Y, b.X]))


class FlowOdeSuite(BaseSuite):
    name: str = "flow_ode"
    description: str = "Riccati field against finite differences and the closed-form flow"
    tolerance_key: str = "flow_ode"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        h = context.settings.pullback_step
        worst = 0.0
        skipped = 0
        for _ in range(context.samples):
            p = small_point(n, rng)
            y_dot, x_dot = hamiltonian_field(p)
            fd_y, fd_x = finite_difference_field(i_tilde_zero, p, context.settings.fd_step)
            worst = max(worst, relative(np.concatenate([fd_y, fd_x]), np.concatenate([y_dot, x_dot])))

            t0 = rng.uniform(0.0, 0.5)
            ahead, behind = flow_closed_form(p, t0 + h), flow_closed_form(p, t0 - h)
            derivative = np.concatenate([ahead.Y - behind.Y, ahead.X - behind.X]) / (2.0 * h)
            worst = max(worst, relative(derivative, np.concatenate(hamiltonian_field(flow_closed_form(p, t0)))))

            # The flow on H(n) x H(n) covers the rotation of (upsilon, zeta).
            v = random_null_twistor(n, rng, Realization.ANTIDIAGONAL)
            section = ks_section(v)
            if chart_condition(section, t0) > CHART_CONDITION:
                skipped += 1
                continue
            moved = TwistorVector.from_stacked(
                rotation_element(n, t0).matrix @ v.stacked, Realization.ANTIDIAGONAL
            )
            distance = class_distance(submersion_r(flow_closed_form(section, t0)), moved)
            worst = max(worst, distance / (1.0 + float(np.linalg.norm(moved.stacked))))
        if skipped:
            logger.warning(f"{self.name}: {skipped} samples off the chart")
        detail = f"{skipped} samples off the chart" if skipped else None
        return self.result(context, worst, context.samples, detail)


class PeriodicitySuite(BaseSuite):
    name: str = "periodicity"
    description: str = "pi-periodicity and the group property of the closed-form flow"
    tolerance_key: str = "periodicity"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        worst = 0.0
        for _ in range(context.samples):
            p = small_point(n, rng)
            s, t = rng.uniform(0.0, 0.5, size=2)
            worst = max(
                worst,
                pair_distance(flow_closed_form(p, np.pi), p),
                pair_distance(flow_closed_form(flow_closed_form(p, s), t), flow_closed_form(p, s + t)),
            )
            v = random_null_twistor(n, rng)
            worst = max(worst, relative(flow_linear(v, 2.0 * np.pi).stacked, v.stacked))
        return self.result(context, worst, context.samples)


class Rk4Suite(BaseSuite):
    name: str = "rk4"
    description: str = "RK4 on the Riccati system against the closed form at t = 1"
    tolerance_key: str = "rk4"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        worst = 0.0
        for _ in range(context.settings.flow_samples):
            p = small_point(context.n, rng)
            traj = integrate_rk4(riccati_rhs, riccati_state(p), 1.0, context.settings.conservation_dt)
            worst = max(worst, relative(traj.final_state, riccati_state(flow_closed_form(p, 1.0))))
        return self.result(context, worst, context.settings.flow_samples)


class ConservationSuite(BaseSuite):
    name: str = "conservation"
    description: str = "I~0, M and R along the closed-form flow and the RK4 twistor flow"
    tolerance_key: str = "conservation"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        settings = context.settings
        t_end = settings.conservation_t_end
        worst = 0.0
        skipped = 0
        for _ in range(settings.flow_samples):
            p = small_point(n, rng, radius=2.0)
            energy = i_tilde_zero(p)
            m0, r0 = integrals_mr(p)
            for t in np.linspace(0.0, t_end, 201):
                if chart_condition(p, t) > 1e3:
                    skipped += 1
                    continue
                q = flow_closed_form(p, t)
                m, r = integrals_mr(q)
                worst = max(
                    worst,
                    abs(i_tilde_zero(q) - energy) / (1.0 + abs(energy)),
                    relative(m, m0),
                    relative(r, r0),
                )

            v = random_null_twistor(n, rng)
            worst = max(worst, self._twistor_sweep(v, t_end, settings.conservation_dt))
        if skipped:
            logger.warning(f"{self.name}: {skipped} closed-form samples off the chart")
        detail = f"{skipped} closed-form samples off the chart" if skipped else None
        return self.result(context, worst, settings.flow_samples, detail)

    @staticmethod
    def _twistor_sweep(v: TwistorVector, t_end: float, dt: float) -> float:
        """Drift along the RK4 lift, where the flow never leaves the chart."""
        m0, r0 = integrals_from_twistor(v)
        scale = 1.0 + frobenius(r0)

        def twistor(w: np.ndarray) -> TwistorVector:
            return TwistorVector.from_stacked(w, Realization.DIAGONAL)

        invariants: Dict[str, Invariant] = {
            "I++": lambda w: i_plus_plus(twistor(w)),
            "M": lambda w: frobenius(integrals_from_twistor(twistor(w))[0] - m0),
            "R": lambda w: frobenius(integrals_from_twistor(twistor(w))[1] - r0),
        }
        traj = integrate_rk4(linear_rhs, v.stacked, t_end, dt, invariants)
        worst = max(traj.drift(name) for name in invariants) / scale

        # M and R of the section agree with the twistor formulas at the end point.
        end = twistor(traj.final_state)
        m_end, r_end = integrals_mr(ks_section(change_realization(end)))
        m_twistor, r_twistor = integrals_from_twistor(end)
        return max(worst, relative(m_end, m_twistor), relative(r_end, r_twistor))

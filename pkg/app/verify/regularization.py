"""Suites for the KS section, the two regularizations and the n = 2 Kepler problem."""

import numpy as np

from app.conventions import ENERGY_FACTOR, H0_FACTOR, KS_X_FACTOR, ONE_FORM_FACTOR
from app.dynamics.integrator import integrate_rk4
from app.dynamics.kepler import X_NORM, fictitious_to_physical, integrals_mr, kepler_h0_n2, mr_vectors_n2
from app.dynamics.riccati import linear_rhs
from app.integrable.hamiltonian import INTEGRALS_TO_MODULI
from app.momentum.maps import j_pm, j_pm_tilde
from app.momentum.observables import i_tilde_plus_plus, i_tilde_zero
from app.momentum.sampling import random_rank_one_point
from app.momentum.types import CotangentHn
from app.regularize.classes import class_distance, invert_j_pm, invert_j_pm_tilde
from app.regularize.ks import (
    c_reg,
    k_reg,
    ks_section,
    ks_section_rank_one,
    one_form_tilde0,
    one_form_tilde_pm,
    section_residual,
    submersion_r,
)
from app.regularize.pauli import SIGMA, ks_inverse_n2, ks_transform_n2, pauli_coordinates, pauli_decompose
from app.schema import Realization
from app.twistor_core.forms import change_realization
from app.twistor_core.sampling import complex_gaussian, random_hermitian, random_null_twistor, random_twistor
from app.twistor_core.types import TwistorVector
from app.verify.algebra import relative
from app.verify.base import BaseSuite, SuiteContext, SuiteResult


def twistor_scale(v: TwistorVector) -> float:
    return 1.0 + float(np.linalg.norm(v.stacked))


def on_section_domain(n: int, rng: np.random.Generator) -> TwistorVector:
    """A null (upsilon, zeta) with upsilon^+ zeta = zeta^+ zeta."""
    zeta = complex_gaussian(rng, n)
    t = complex_gaussian(rng, n)
    t -= zeta * np.vdot(zeta, t) / np.vdot(zeta, zeta)
    return TwistorVector(realization=Realization.ANTIDIAGONAL, upper=zeta + t, lower=zeta)


class RegularizationSuite(BaseSuite):
    name: str = "regularization"
    description: str = "KS and Cayley regularizations agree up to phase; inverse momentum maps"
    tolerance_key: str = "regularization"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        worst = 0.0
        for _ in range(context.samples):
            p = random_rank_one_point(n, rng)
            ks_class = change_realization(k_reg(p))
            worst = max(worst, class_distance(c_reg(p), ks_class) / twistor_scale(ks_class))

            v = random_twistor(n, rng)
            u = random_twistor(n, rng, Realization.ANTIDIAGONAL)
            worst = max(
                worst,
                class_distance(invert_j_pm(j_pm(v)), v) / twistor_scale(v),
                class_distance(invert_j_pm_tilde(j_pm_tilde(u)), u) / twistor_scale(u),
            )
        return self.result(context, worst, context.samples)


class SectionSuite(BaseSuite):
    name: str = "section"
    description: str = "KS section: Y zeta = upsilon, phase invariance, R o S = id, energy match"
    tolerance_key: str = "section"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        worst = 0.0
        for _ in range(context.samples):
            v = random_null_twistor(n, rng, Realization.ANTIDIAGONAL)
            scale = twistor_scale(v)
            p = ks_section(v)
            phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
            rotated = ks_section(v.scaled(phase))
            energy = i_tilde_plus_plus(v)
            worst = max(
                worst,
                section_residual(p, v) / scale,
                relative(rotated.Y, p.Y),
                relative(rotated.X, p.X),
                class_distance(submersion_r(p), v) / scale,
                abs(energy - ENERGY_FACTOR * i_tilde_zero(p)) / (1.0 + energy),
            )

            w = on_section_domain(n, rng)
            worst = max(worst, section_residual(ks_section_rank_one(w), w) / twistor_scale(w))
        return self.result(context, worst, context.samples)


class PullbackSuite(BaseSuite):
    name: str = "pullback"
    description: str = "R pulls the twistor one-form back to -Tr(X dY)"
    tolerance_key: str = "pullback"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        h = context.settings.pullback_step
        worst = 0.0
        for _ in range(context.samples):
            y = random_hermitian(n, rng)
            zeta = complex_gaussian(rng, n)
            dy = random_hermitian(n, rng)
            dzeta = complex_gaussian(rng, n)

            def image(t: float) -> TwistorVector:
                z = zeta + t * dzeta
                return submersion_r(CotangentHn(Y=y + t * dy, X=np.outer(z, z.conj())))

            u = image(0.0)
            du = TwistorVector.from_stacked(
                (image(h).stacked - image(-h).stacked) / (2.0 * h), Realization.ANTIDIAGONAL
            )
            expected = one_form_tilde0(CotangentHn(Y=y, X=np.outer(zeta, zeta.conj())), dy)
            worst = max(worst, abs(one_form_tilde_pm(u, du) - expected) / (1.0 + abs(expected)))

            # Traceless Y restricted to rank-one X: -Tr(X dY) = -2 x . dy in Pauli coordinates.
            z2 = complex_gaussian(rng, 2)
            x_pauli = pauli_decompose(np.outer(z2, z2.conj())).vec
            dy_vec = rng.standard_normal(3)
            dy2 = np.tensordot(dy_vec, SIGMA[1:], axes=1)
            point = CotangentHn(Y=np.tensordot(rng.standard_normal(3), SIGMA[1:], axes=1), X=np.outer(z2, z2.conj()))
            value = one_form_tilde0(point, dy2)
            worst = max(worst, abs(value + ONE_FORM_FACTOR * float(x_pauli @ dy_vec)) / (1.0 + abs(value)))
        return self.result(context, worst, context.samples, f"one-form factor {ONE_FORM_FACTOR}")


class KeplerSuite(BaseSuite):
    name: str = "kepler"
    description: str = "n = 2: H0(y, x) against I~0, KS vectors against Pauli coordinates"
    tolerance_key: str = "kepler"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        worst = 0.0
        for _ in range(context.samples):
            v = random_null_twistor(2, rng, Realization.ANTIDIAGONAL)
            p = ks_section(v)
            y, x = ks_transform_n2(v)
            y_pauli, x_pauli = pauli_coordinates(p)
            energy = i_tilde_zero(p)
            norm = float(np.linalg.norm(x))
            worst = max(
                worst,
                abs(kepler_h0_n2(y, x) - H0_FACTOR * energy) / (1.0 + energy),
                relative(y, y_pauli),
                relative(KS_X_FACTOR * x_pauli, x),
                abs(norm - np.trace(p.X).real) / (1.0 + norm),
                class_distance(ks_inverse_n2(y, x), v) / twistor_scale(v),
            )
        return self.result(context, worst, context.samples, f"KS factor {KS_X_FACTOR}")


class MrVectorsSuite(BaseSuite):
    name: str = "mr_vectors"
    description: str = "n = 2: Pauli parts of M and R, and the moduli of (eta, xi) they determine"
    tolerance_key: str = "mr_vectors"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        worst = 0.0
        for _ in range(context.samples):
            v = random_null_twistor(2, rng, Realization.ANTIDIAGONAL)
            p = ks_section(v)
            m, r = integrals_mr(p)
            m_pauli, r_pauli = pauli_decompose(m), pauli_decompose(r)
            m_vec, r_vec, m0, r0 = mr_vectors_n2(*pauli_coordinates(p))
            scale = 1.0 + abs(r0)
            worst = max(
                worst,
                float(np.linalg.norm(m_vec - m_pauli.vec)) / scale,
                float(np.linalg.norm(r_vec - r_pauli.vec)) / scale,
                abs(m0 - m_pauli.scalar) / scale,
                abs(r0 - r_pauli.scalar) / scale,
            )

            w = change_realization(v)
            moduli = np.abs(w.stacked) ** 2
            predicted = INTEGRALS_TO_MODULI @ np.array(
                [r_pauli.scalar, r_pauli.vec[2], m_pauli.scalar, m_pauli.vec[2]]
            )
            worst = max(worst, float(np.max(np.abs(moduli - predicted))) / scale)
        return self.result(context, worst, context.samples)


class FictitiousTimeSuite(BaseSuite):
    name: str = "fictitious_time"
    description: str = "Physical time t(s) = int |x| ds converges under step refinement"
    tolerance_key: str = "fictitious_time"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        dt = context.settings.conservation_dt
        s_end = 2.0
        worst = 0.0

        def x_norm(w: np.ndarray) -> float:
            zeta = change_realization(TwistorVector.from_stacked(w, Realization.DIAGONAL)).lower
            return float(np.vdot(zeta, zeta).real)

        for _ in range(context.settings.flow_samples):
            v = random_null_twistor(n, rng)
            v = v.scaled(1.0 / np.linalg.norm(v.stacked))
            finals = []
            for step in (dt, 0.5 * dt):
                traj = integrate_rk4(linear_rhs, v.stacked, s_end, step, {X_NORM: x_norm})
                finals.append(fictitious_to_physical(traj)[-1])
            worst = max(worst, abs(finals[0] - finals[1]) / (1.0 + abs(finals[1])))
        return self.result(context, worst, context.settings.flow_samples)

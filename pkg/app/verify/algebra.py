"""Suites for forms, group and algebra membership, momentum maps and brackets."""

import numpy as np

from app.conventions import PAIRING_CONSTANT, QUADRATIC_CONSTANT
from app.logger import logger
from app.momentum.actions import act_lambda, act_on_un, act_sigma_tilde
from app.momentum.functionals import (
    bracket_of_linear,
    lie_poisson_linear,
    linear_functional_eval,
    x_plus_minus,
    x_plus_plus,
)
from app.momentum.maps import j0, j0_tilde, j_pm, j_pm_tilde
from app.momentum.observables import i_plus_plus, i_tilde_plus_plus, i_tilde_zero, i_zero
from app.momentum.sampling import random_cotangent_hn, random_cotangent_un
from app.momentum.types import CotangentUn, LinearFunctional
from app.regularize.cayley import cayley, cayley_inverse, t_star_c
from app.schema import Realization
from app.twistor_core.forms import (
    ad_cayley,
    adjoint,
    algebra_residual,
    cayley_intertwiner,
    change_realization,
    frobenius,
    group_residual,
    hermitian_residual,
    is_isotropic,
    isotropic_frame,
    make_form,
    null_invariant,
    unitary_residual,
)
from app.twistor_core.orbits import (
    is_square_zero,
    orbit_label,
    rho_normal_form,
    square_zero_residual,
    stabilizer_element,
)
from app.twistor_core.sampling import (
    random_algebra_element,
    random_group_element,
    random_hermitian,
    random_invertible,
    random_null_twistor,
    random_stabilizer_pair,
    random_twistor,
    random_unitary,
)
from app.twistor_core.types import GroupElement, TwistorVector
from app.verify.base import BaseSuite, SuiteContext, SuiteResult


def relative(a: np.ndarray, b: np.ndarray) -> float:
    """||a - b||_F / (1 + ||b||_F)."""
    return frobenius(np.asarray(a) - np.asarray(b)) / (1.0 + frobenius(b))


def draw_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31))


def act_on_twistor(g: GroupElement, w: TwistorVector) -> TwistorVector:
    return TwistorVector.from_stacked(g.matrix @ w.stacked, w.realization)


class FormsSuite(BaseSuite):
    name: str = "forms"
    description: str = "Hermitian forms, the Cayley intertwiner and realization changes"
    tolerance_key: str = "forms"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        worst = 0.0
        for realization in Realization:
            phi = make_form(n, realization).matrix
            worst = max(worst, hermitian_residual(phi), frobenius(phi @ phi - np.eye(2 * n)))
        c = cayley_intertwiner(n)
        worst = max(
            worst,
            unitary_residual(c.matrix),
            frobenius(c.matrix.conj().T @ c.target.matrix @ c.matrix - c.source.matrix),
        )
        diagonal = make_form(n, Realization.DIAGONAL)
        for _ in range(context.samples):
            v = random_twistor(n, rng)
            u = change_realization(v)
            scale = 1.0 + frobenius(v.stacked) ** 2
            worst = max(
                worst,
                relative(change_realization(u).stacked, v.stacked),
                abs(null_invariant(u) - null_invariant(v)) / scale,
            )
            if not is_isotropic(isotropic_frame(random_unitary(n, rng)), diagonal, self.tolerance(context)):
                worst = float("inf")
        return self.result(context, worst, context.samples)


class GroupMembershipSuite(BaseSuite):
    name: str = "group_membership"
    description: str = "Exponentials and stabilizer elements lie in U(n,n)"
    tolerance_key: str = "group_membership"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        eye = np.eye(n)
        worst = 0.0
        for _ in range(context.samples):
            seed = draw_seed(rng)
            for realization in Realization:
                form = make_form(n, realization)
                worst = max(worst, group_residual(random_group_element(n, form, seed), form))
            g = stabilizer_element(*random_stabilizer_pair(n, rng))
            worst = max(worst, group_residual(g, g.form), relative(act_on_un(g, eye), eye))
        return self.result(context, worst, context.samples)


class MembershipSuite(BaseSuite):
    name: str = "membership"
    description: str = "Images of the four momentum maps lie in u(n,n)"
    tolerance_key: str = "membership"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        worst = 0.0
        for _ in range(context.samples):
            images = [
                j_pm(random_twistor(n, rng)),
                j_pm_tilde(random_twistor(n, rng, Realization.ANTIDIAGONAL)),
                j0(random_cotangent_un(n, rng)),
                j0_tilde(random_cotangent_hn(n, rng)),
            ]
            worst = max(worst, *(algebra_residual(m, m.form) for m in images))
        return self.result(context, worst, context.samples)


class NilpotencySuite(BaseSuite):
    name: str = "nilpotency"
    description: str = "Square-zero images on the null cone and orbit labels of J0"
    tolerance_key: str = "nilpotency"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        worst = 0.0
        mismatches = 0
        for _ in range(context.samples):
            images = [
                j_pm(random_null_twistor(n, rng)),
                j_pm_tilde(random_null_twistor(n, rng, Realization.ANTIDIAGONAL)),
                j0(random_cotangent_un(n, rng)),
                j0_tilde(random_cotangent_hn(n, rng)),
            ]
            worst = max(worst, *(square_zero_residual(m.matrix) for m in images))

            k = int(rng.integers(0, n + 1))
            l = int(rng.integers(0, n - k + 1))
            f = random_invertible(n, rng)
            rho = f @ rho_normal_form(n, k, l) @ f.conj().T
            _, rank = is_square_zero(j0(CotangentUn(Z=np.eye(n), rho=rho)).matrix)
            label = orbit_label(rho)
            if (label.k, label.l) != (k, l) or rank != k + l:
                mismatches += 1
        if mismatches:
            return self.result(context, float("inf"), context.samples, f"{mismatches} orbit label mismatches")
        return self.result(context, worst, context.samples)


class QuadraticSuite(BaseSuite):
    name: str = "quadratic"
    description: str = "J(v)^2 = c I+-(v) J(v) for both twistor momentum maps"
    tolerance_key: str = "quadratic"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        worst = 0.0
        for _ in range(context.samples):
            for v, momentum in (
                (random_twistor(n, rng), j_pm),
                (random_twistor(n, rng, Realization.ANTIDIAGONAL), j_pm_tilde),
            ):
                m = momentum(v).matrix
                defect = m @ m - QUADRATIC_CONSTANT * null_invariant(v) * m
                worst = max(worst, frobenius(defect) / (1.0 + frobenius(m) ** 2))
        return self.result(context, worst, context.samples, f"c = {QUADRATIC_CONSTANT}")


class EquivarianceSuite(BaseSuite):
    name: str = "equivariance"
    description: str = "Equivariance of J0, J~0 and the Cayley intertwining diagram"
    tolerance_key: str = "equivariance"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        diagonal = make_form(n, Realization.DIAGONAL)
        antidiagonal = make_form(n, Realization.ANTIDIAGONAL)
        worst = 0.0
        skipped = 0
        for _ in range(context.samples):
            g = random_group_element(n, diagonal, draw_seed(rng))
            p = random_cotangent_un(n, rng)
            worst = max(worst, relative(adjoint(g, j0(p)), j0(act_lambda(g, p)).matrix))

            w = random_twistor(n, rng)
            worst = max(worst, relative(adjoint(g, j_pm(w)), j_pm(act_on_twistor(g, w)).matrix))

            h = random_group_element(n, antidiagonal, draw_seed(rng), scale=0.5)
            q = random_cotangent_hn(n, rng)
            _, _, c, d = h.blocks()
            if np.linalg.cond(c @ q.Y + d) > 1e6:
                skipped += 1
            else:
                worst = max(worst, relative(adjoint(h, j0_tilde(q)), j0_tilde(act_sigma_tilde(h, q)).matrix))

            u = random_twistor(n, rng, Realization.ANTIDIAGONAL)
            worst = max(worst, relative(ad_cayley(j_pm_tilde(u).matrix), j_pm(change_realization(u)).matrix))
            worst = max(worst, relative(ad_cayley(j0_tilde(q).matrix), j0(t_star_c(q)).matrix))
        if skipped:
            logger.warning(f"{self.name}: {skipped} near-singular actions skipped")
        detail = f"{skipped} near-singular actions skipped" if skipped else None
        return self.result(context, worst, context.samples, detail)


class RoundTripSuite(BaseSuite):
    name: str = "round_trip"
    description: str = "Cayley transform and its inverse, and unitarity of its image"
    tolerance_key: str = "round_trip"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        worst = 0.0
        for _ in range(context.samples):
            y = random_hermitian(n, rng, scale=2.0)
            z = cayley(y)
            worst = max(worst, unitary_residual(z), relative(cayley_inverse(z), y))
            u = random_unitary(n, rng)
            worst = max(worst, relative(cayley(cayley_inverse(u)), u))
        return self.result(context, worst, context.samples)


class LiePoissonSuite(BaseSuite):
    name: str = "lie_poisson"
    description: str = "Lie-Poisson brackets of linear functions and the pairing constants"
    tolerance_key: str = "lie_poisson"

    def execute(self, context: SuiteContext) -> SuiteResult:
        rng = context.rng(self.name)
        n = context.n
        diagonal = make_form(n, Realization.DIAGONAL)
        worst = 0.0
        for _ in range(context.samples):
            l1, l2, l3 = (
                LinearFunctional(generator=random_algebra_element(n, diagonal, draw_seed(rng)))
                for _ in range(3)
            )
            a = random_algebra_element(n, diagonal, draw_seed(rng), scale=2.0)
            value = lie_poisson_linear(l1, l2, a)
            expected = linear_functional_eval(bracket_of_linear(l1, l2), a)
            scale = 1.0 + frobenius(l1.generator.matrix) * frobenius(l2.generator.matrix) * frobenius(a.matrix)
            worst = max(worst, abs(value - expected) / scale)

            jacobi = sum(
                bracket_of_linear(x, bracket_of_linear(y, z)).generator.matrix
                for x, y, z in ((l1, l2, l3), (l2, l3, l1), (l3, l1, l2))
            )
            worst = max(worst, frobenius(jacobi))
            worst = max(worst, self._pairings(n, rng))
        return self.result(context, worst, context.samples, f"pairing constant {PAIRING_CONSTANT}")

    @staticmethod
    def _pairings(n: int, rng: np.random.Generator) -> float:
        v = random_twistor(n, rng)
        u = random_twistor(n, rng, Realization.ANTIDIAGONAL)
        p = random_cotangent_un(n, rng)
        q = random_cotangent_hn(n, rng)
        anti = Realization.ANTIDIAGONAL
        pairs = [
            (linear_functional_eval(x_plus_plus(n), j_pm(v)), null_invariant(v)),
            (linear_functional_eval(x_plus_minus(n), j_pm(v)), i_plus_plus(v)),
            (linear_functional_eval(x_plus_minus(n), j0(p)), i_zero(p)),
            (linear_functional_eval(x_plus_plus(n, anti), j_pm_tilde(u)), null_invariant(u)),
            (linear_functional_eval(x_plus_minus(n, anti), j_pm_tilde(u)), i_tilde_plus_plus(u)),
            (linear_functional_eval(x_plus_minus(n, anti), j0_tilde(q)), i_tilde_zero(q)),
        ]
        return max(abs(value - PAIRING_CONSTANT * target) / (1.0 + abs(target)) for value, target in pairs)

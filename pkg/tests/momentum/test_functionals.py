import numpy as np
import pytest

from app.conventions import BRACKET_SIGN, PAIRING_CONSTANT
from app.exceptions import ConventionError
from app.momentum.functionals import (
    bracket_of_linear,
    lie_poisson_linear,
    linear_functional_eval,
    x_plus_minus,
    x_plus_plus,
)
from app.momentum.maps import j0, j0_tilde, j_pm, j_pm_tilde
from app.momentum.observables import i_plus_plus, i_tilde_plus_plus, i_tilde_zero, i_zero
from app.momentum.poisson import bracket_arrays, hamiltonian_velocity, poisson_bracket_flat
from app.momentum.sampling import random_cotangent_hn, random_cotangent_un
from app.momentum.types import LinearFunctional
from app.schema import Realization
from app.twistor_core.forms import make_form, null_invariant
from app.twistor_core.sampling import random_algebra_element, random_twistor
from app.twistor_core.types import TwistorVector


ANTI = Realization.ANTIDIAGONAL


def test_pairings(n, rng):
    """Tests that the standard generators pair with the momentum maps to the named invariants."""
    for _ in range(30):
        v = random_twistor(n, rng)
        u = random_twistor(n, rng, ANTI)
        p = random_cotangent_un(n, rng)
        q = random_cotangent_hn(n, rng)
        pairs = [
            (linear_functional_eval(x_plus_plus(n), j_pm(v)), null_invariant(v)),
            (linear_functional_eval(x_plus_minus(n), j_pm(v)), i_plus_plus(v)),
            (linear_functional_eval(x_plus_minus(n), j0(p)), i_zero(p)),
            (linear_functional_eval(x_plus_plus(n, ANTI), j_pm_tilde(u)), null_invariant(u)),
            (linear_functional_eval(x_plus_minus(n, ANTI), j_pm_tilde(u)), i_tilde_plus_plus(u)),
            (linear_functional_eval(x_plus_minus(n, ANTI), j0_tilde(q)), i_tilde_zero(q)),
        ]
        for value, target in pairs:
            assert value == pytest.approx(PAIRING_CONSTANT * target, rel=1e-10, abs=1e-10)


def test_lie_poisson_matches_commutator(n):
    """Tests the block formula against Tr(A [X1, X2])."""
    form = make_form(n, Realization.DIAGONAL)
    for seed in range(0, 300, 3):
        l1 = LinearFunctional(generator=random_algebra_element(n, form, seed))
        l2 = LinearFunctional(generator=random_algebra_element(n, form, seed + 1))
        a = random_algebra_element(n, form, seed + 2, scale=2.0)
        expected = linear_functional_eval(bracket_of_linear(l1, l2), a)
        assert lie_poisson_linear(l1, l2, a) == pytest.approx(expected, abs=1e-10)


def test_bracket_jacobi(n):
    """Tests the Jacobi identity of generator commutators."""
    form = make_form(n, Realization.DIAGONAL)
    l1, l2, l3 = (LinearFunctional(generator=random_algebra_element(n, form, s)) for s in (1, 2, 3))
    total = sum(
        bracket_of_linear(x, bracket_of_linear(y, z)).generator.matrix
        for x, y, z in ((l1, l2, l3), (l2, l3, l1), (l3, l1, l2))
    )
    assert np.linalg.norm(total) < 1e-12


def test_bracket_rejects_mixed_realizations():
    """Tests that generators of different forms cannot be bracketed."""
    with pytest.raises(ConventionError):
        bracket_of_linear(x_plus_plus(1), x_plus_plus(1, ANTI))


def test_flat_bracket_examples():
    """Tests {Re eta, Im eta} = 1/2 and the vanishing bracket of moduli."""
    v = TwistorVector(realization=Realization.DIAGONAL, upper=[0.3 + 0.4j], lower=[1.0 - 0.2j])
    assert poisson_bracket_flat(lambda w: w.upper[0].real, lambda w: w.upper[0].imag, v) == pytest.approx(0.5, abs=1e-8)
    moduli = poisson_bracket_flat(lambda w: abs(w.upper[0]) ** 2, lambda w: abs(w.lower[0]) ** 2, v)
    assert moduli == pytest.approx(0.0, abs=1e-8)


def test_i_plus_plus_rotates_phases():
    """Tests that I++ generates (e^{it} eta, e^{-it} xi)."""
    w = np.array([0.3 + 0.4j, 1.0 - 0.2j])
    velocity = hamiltonian_velocity(lambda u: float(np.sum(np.abs(u) ** 2)), w)
    np.testing.assert_allclose(velocity, [1j * w[0], -1j * w[1]], atol=1e-8)


def test_pulled_back_bracket_sign(n, rng):
    """Tests {L1 o J, L2 o J} = s L_[X1, X2] o J with the pinned sign."""
    form = make_form(n, Realization.DIAGONAL)
    for seed in range(10):
        l1 = LinearFunctional(generator=random_algebra_element(n, form, 2 * seed))
        l2 = LinearFunctional(generator=random_algebra_element(n, form, 2 * seed + 1))
        v = random_twistor(n, rng)

        def pulled(functional):
            return lambda w: linear_functional_eval(functional, j_pm(TwistorVector.from_stacked(w, Realization.DIAGONAL)))

        value = bracket_arrays(pulled(l1), pulled(l2), v.stacked).real
        expected = BRACKET_SIGN * linear_functional_eval(bracket_of_linear(l1, l2), j_pm(v))
        assert value == pytest.approx(expected, abs=1e-6 * (1.0 + np.linalg.norm(v.stacked) ** 2))

import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.dynamics.integrator import Trajectory, integrate_rk4
from app.dynamics.kepler import (
    X_NORM,
    fictitious_to_physical,
    integrals_from_twistor,
    integrals_mr,
    kepler_h0_n2,
    mr_vectors_n2,
    n_plus_minus,
)
from app.dynamics.riccati import flow_linear, linear_rhs
from app.exceptions import ConventionError, DomainError
from app.momentum.observables import i_tilde_zero
from app.regularize.ks import ks_section
from app.regularize.pauli import ks_transform_n2, pauli_coordinates, pauli_decompose
from app.schema import Realization
from app.twistor_core.forms import change_realization
from app.twistor_core.sampling import random_null_twistor
from app.twistor_core.types import TwistorVector


ANTI = Realization.ANTIDIAGONAL


def test_h0_example():
    assert kepler_h0_n2([0.0, 0.5, 0.0], [1.0, 0.0, 0.0]) == pytest.approx(1.25)
    with pytest.raises(DomainError):
        kepler_h0_n2([0.0, 0.0, 0.0], [0.0, 0.0, 0.0])


def test_mr_vectors_example():
    m_vec, r_vec, m0, r0 = mr_vectors_n2([0.0, 0.5, 0.0], [1.0, 0.0, 0.0])
    assert_allclose(m_vec, [0.0, 0.0, -1.0])
    assert_allclose(r_vec, [0.75, 0.0, 0.0])
    assert m0 == 0.0
    assert r0 == pytest.approx(1.25)


def test_h0_is_regularized_energy(rng):
    """Tests H0(y, x) = I~0 on the KS section."""
    for _ in range(100):
        v = random_null_twistor(2, rng, ANTI)
        y, x = ks_transform_n2(v)
        assert kepler_h0_n2(y, x) == pytest.approx(i_tilde_zero(ks_section(v)), rel=1e-10)


def test_mr_vectors_match_matrices(rng):
    """Tests the Pauli parts of M = i[X, Y] and R = X + YXY on rank-one data."""
    for _ in range(100):
        p = ks_section(random_null_twistor(2, rng, ANTI))
        m, r = integrals_mr(p)
        m_vec, r_vec, m0, r0 = mr_vectors_n2(*pauli_coordinates(p))
        scale = 1.0 + r0
        assert_allclose(pauli_decompose(m).vec, m_vec, atol=1e-9 * scale)
        assert_allclose(pauli_decompose(r).vec, r_vec, atol=1e-9 * scale)
        assert pauli_decompose(r).scalar == pytest.approx(r0, rel=1e-9)


def test_integrals_from_twistor(n, rng):
    """Tests N+ = xi xi^+ and N- = eta eta^+ through (eta, xi) = C (Y zeta, zeta)."""
    for _ in range(50):
        u = random_null_twistor(n, rng, ANTI)
        n_plus, n_minus = n_plus_minus(ks_section(u))
        v = change_realization(u)
        m, r = integrals_from_twistor(v)
        assert_allclose(n_plus, np.outer(v.lower, v.lower.conj()), atol=1e-9)
        assert_allclose(n_minus, np.outer(v.upper, v.upper.conj()), atol=1e-9)
        assert_allclose(m, n_plus - n_minus, atol=1e-9)
        assert_allclose(r, n_plus + n_minus, atol=1e-9)


def test_integrals_from_twistor_diagonal_example():
    v = random_null_twistor(2, np.random.default_rng(7))
    m, r = integrals_from_twistor(v)
    assert_allclose(m + r, 2.0 * np.outer(v.lower, v.lower.conj()))
    with pytest.raises(ConventionError):
        integrals_from_twistor(change_realization(v))


def test_integrals_conserved_by_linear_flow(rng):
    v = random_null_twistor(2, rng)
    before = integrals_from_twistor(v)
    after = integrals_from_twistor(flow_linear(v, 1.3))
    for a, b in zip(before, after):
        assert_allclose(a, b, atol=1e-12)


def test_fictitious_to_physical_constant_norm():
    """Tests t(s) = 2 s for |x| = 2."""
    times = np.linspace(0.0, 1.0, 11)
    traj = Trajectory(times=times, states=np.zeros((11, 1)), invariants={X_NORM: np.full(11, 2.0)})
    assert_allclose(fictitious_to_physical(traj), 2.0 * times)


def test_fictitious_to_physical_domain():
    times = np.linspace(0.0, 1.0, 3)
    with pytest.raises(DomainError):
        fictitious_to_physical(Trajectory(times=times, states=np.zeros((3, 1))))
    with pytest.raises(DomainError):
        fictitious_to_physical(
            Trajectory(times=times, states=np.zeros((3, 1)), invariants={X_NORM: np.array([1.0, 0.0, 1.0])})
        )


def test_physical_time_along_linear_flow(rng):
    """Tests that t(s) is increasing along the twistor flow away from collisions."""
    v = random_null_twistor(2, rng)

    def x_norm(w):
        zeta = change_realization(TwistorVector.from_stacked(w, Realization.DIAGONAL)).lower
        return float(np.vdot(zeta, zeta).real)

    traj = integrate_rk4(linear_rhs, v.stacked, 1.0, 1e-2, {X_NORM: x_norm})
    t = fictitious_to_physical(traj)
    assert t[0] == 0.0
    assert np.all(np.diff(t) > 0)

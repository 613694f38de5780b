import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.dynamics.integrator import integrate_rk4
from app.dynamics.kepler import integrals_mr
from app.dynamics.riccati import (
    finite_difference_field,
    flow_closed_form,
    flow_linear,
    from_riccati_state,
    hamiltonian_field,
    hermitian_basis,
    riccati_rhs,
    riccati_state,
    rotation_element,
)
from app.exceptions import ConventionError, DimensionError, SingularActionError
from app.momentum.observables import i_tilde_zero
from app.momentum.sampling import random_cotangent_hn
from app.momentum.types import CotangentHn
from app.schema import Realization
from app.twistor_core.forms import group_residual
from app.twistor_core.sampling import random_twistor
from app.verify.flows import small_point


@pytest.mark.parametrize("t", [0.1, 0.5, 1.2, -0.7])
def test_closed_form_n1(t):
    """Tests Y(t) = tan t and X(t) = X cos^2 t from Y = 0."""
    q = flow_closed_form(CotangentHn(Y=[[0.0]], X=[[2.0]]), t)
    assert_allclose(q.Y, [[np.tan(t)]], rtol=1e-12)
    assert_allclose(q.X, [[2.0 * np.cos(t) ** 2]], rtol=1e-12)


def test_leaving_the_chart():
    """Tests that Y = diag(0, 1) leaves the chart at t = pi/4."""
    with pytest.raises(SingularActionError):
        flow_closed_form(CotangentHn(Y=np.diag([0.0, 1.0]), X=np.eye(2)), np.pi / 4)


def test_rotation_element_is_in_group(n):
    for t in (0.0, 0.3, 2.0):
        g = rotation_element(n, t)
        assert group_residual(g, g.form) < 1e-12


def test_periodicity_and_group_property(n, rng):
    """Tests Phi_pi = id and Phi_s o Phi_t = Phi_{s+t}."""
    for _ in range(20):
        p = small_point(n, rng)
        back = flow_closed_form(p, np.pi)
        assert_allclose(back.Y, p.Y, atol=1e-10)
        assert_allclose(back.X, p.X, atol=1e-10)
        composed = flow_closed_form(flow_closed_form(p, 0.2), 0.3)
        direct = flow_closed_form(p, 0.5)
        assert_allclose(composed.Y, direct.Y, atol=1e-10)
        assert_allclose(composed.X, direct.X, atol=1e-10)


def test_closed_form_solves_riccati(n, rng):
    """Tests d/dt Phi_t at t = 0 against (E + Y^2, -(XY + YX))."""
    h = 1e-5
    for _ in range(20):
        p = small_point(n, rng)
        plus, minus = flow_closed_form(p, h), flow_closed_form(p, -h)
        y_dot, x_dot = hamiltonian_field(p)
        assert_allclose((plus.Y - minus.Y) / (2 * h), y_dot, atol=1e-6)
        assert_allclose((plus.X - minus.X) / (2 * h), x_dot, atol=1e-6)


def test_field_is_hamiltonian_field_of_energy(n, rng):
    """Tests that the Riccati field is the finite-difference field of I~0."""
    for _ in range(5):
        p = small_point(n, rng)
        y_dot, x_dot = hamiltonian_field(p)
        fd_y, fd_x = finite_difference_field(i_tilde_zero, p)
        assert_allclose(fd_y, y_dot, atol=1e-6)
        assert_allclose(fd_x, x_dot, atol=1e-6)


def test_rk4_matches_closed_form(n, rng):
    p = small_point(n, rng)
    traj = integrate_rk4(riccati_rhs, riccati_state(p), 0.5, 1e-3)
    end = from_riccati_state(traj.final_state)
    expected = flow_closed_form(p, 0.5)
    assert_allclose(end.Y, expected.Y, atol=1e-8)
    assert_allclose(end.X, expected.X, atol=1e-8)


def test_integrals_are_conserved(n, rng):
    """Tests that I~0, M and R are constant along the closed-form flow."""
    for _ in range(10):
        p = small_point(n, rng)
        q = flow_closed_form(p, 0.4)
        assert i_tilde_zero(q) == pytest.approx(i_tilde_zero(p), rel=1e-10, abs=1e-10)
        for before, after in zip(integrals_mr(p), integrals_mr(q)):
            assert_allclose(after, before, atol=1e-9)


def test_hermitian_basis_is_orthonormal(n):
    basis = hermitian_basis(n)
    assert len(basis) == n * n
    gram = np.array([[np.trace(a @ b).real for b in basis] for a in basis])
    assert_allclose(gram, np.eye(n * n), atol=1e-14)


def test_flow_linear():
    v = random_twistor(2, np.random.default_rng(3))
    w = flow_linear(v, np.pi / 2)
    assert_allclose(w.upper, 1j * v.upper)
    assert_allclose(w.lower, -1j * v.lower)
    with pytest.raises(ConventionError):
        flow_linear(random_twistor(1, np.random.default_rng(4), Realization.ANTIDIAGONAL), 0.1)


def test_state_round_trip(rng):
    p = random_cotangent_hn(3, rng)
    q = from_riccati_state(riccati_state(p))
    assert_allclose(q.Y, p.Y)
    assert_allclose(q.X, p.X)
    with pytest.raises(DimensionError):
        from_riccati_state(np.zeros(5))

import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.exceptions import DimensionError, MembershipError
from app.momentum.actions import act_on_un
from app.twistor_core.forms import group_residual
from app.twistor_core.orbits import (
    is_square_zero,
    orbit_label,
    rho_normal_form,
    square_zero_residual,
    stabilizer_element,
)
from app.twistor_core.sampling import random_invertible, random_stabilizer_pair


def test_normal_form_labels():
    """Tests that i diag(1.., -1.., 0..) carries its own label."""
    for n in range(1, 5):
        for k in range(n + 1):
            for l in range(n - k + 1):
                label = orbit_label(rho_normal_form(n, k, l))
                assert (label.k, label.l) == (k, l)
                assert label.rank == k + l


def test_normal_form_rejects_bad_signature():
    """Tests that k + l > n is refused."""
    with pytest.raises(DimensionError):
        rho_normal_form(2, 2, 1)


def test_label_examples():
    """Tests the N_10 and zero labels."""
    assert str(orbit_label(1j * np.diag([1.0, 0.0, 0.0]))) == "(1,0)"
    assert str(orbit_label(np.zeros((3, 3)))) == "(0,0)"


def test_label_invariant_under_congruence(rng):
    """Tests that F rho F^+ keeps the label for cond(F) <= 1e3."""
    for _ in range(100):
        n = int(rng.integers(1, 5))
        k = int(rng.integers(0, n + 1))
        l = int(rng.integers(0, n - k + 1))
        f = random_invertible(n, rng)
        label = orbit_label(f @ rho_normal_form(n, k, l) @ f.conj().T)
        assert (label.k, label.l) == (k, l)


def test_label_rejects_hermitian():
    """Tests that a hermitian matrix is not a valid rho."""
    with pytest.raises(MembershipError):
        orbit_label(np.diag([1.0, 0.0]))


def test_square_zero():
    """Tests nilpotency and rank of a strictly upper triangular matrix."""
    m = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], dtype=complex)
    assert is_square_zero(m) == (True, 1)
    assert square_zero_residual(m) == 0.0
    nilpotent, rank = is_square_zero(np.eye(2))
    assert not nilpotent
    assert rank == 2


def test_stabilizer_fixes_identity(n, rng):
    """Tests that stabilizer elements lie in U(n,n) and fix Z = E."""
    for _ in range(30):
        g = stabilizer_element(*random_stabilizer_pair(n, rng))
        assert group_residual(g, g.form) < 1e-10
        assert_allclose(act_on_un(g, np.eye(n)), np.eye(n), atol=1e-9)


def test_stabilizer_rejects_bad_pair():
    """Tests that H F^+ + F H^+ != 0 is refused."""
    with pytest.raises(MembershipError):
        stabilizer_element(np.eye(2), np.eye(2))

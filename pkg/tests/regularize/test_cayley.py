import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from app.exceptions import MembershipError, SingularActionError
from app.momentum.types import CotangentHn
from app.regularize.cayley import cayley, cayley_inverse, t_star_c
from app.twistor_core.forms import unitary_residual
from app.twistor_core.sampling import random_hermitian, random_unitary


entries = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


@st.composite
def hermitian_matrices(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    re = draw(arrays(np.float64, (n, n), elements=entries))
    im = draw(arrays(np.float64, (n, n), elements=entries))
    m = re + 1j * im
    return 0.5 * (m + m.conj().T)


def test_cayley_examples():
    """Tests Y = 0 -> -iE and Y = 1 -> 1."""
    assert_allclose(cayley(np.zeros((3, 3))), -1j * np.eye(3), atol=1e-15)
    assert_allclose(cayley(np.array([[1.0]])), [[1.0]], atol=1e-15)
    assert_allclose(cayley_inverse(-1j * np.eye(2)), np.zeros((2, 2)), atol=1e-15)


def test_cayley_inverse_boundary():
    """Tests that Z = iE lies on the compactification boundary."""
    with pytest.raises(SingularActionError):
        cayley_inverse(1j * np.eye(2))


def test_cayley_rejects_non_hermitian():
    """Tests the hermitian precondition."""
    with pytest.raises(MembershipError):
        cayley(np.array([[0.0, 1.0], [0.0, 0.0]]))


@settings(max_examples=60, deadline=None)
@given(hermitian_matrices())
def test_cayley_is_unitary_and_invertible(y):
    """Tests unitarity of the image and the round trip through cayley_inverse."""
    z = cayley(y)
    assert unitary_residual(z) < 1e-12
    assert_allclose(cayley_inverse(z), y, atol=1e-9 * (1.0 + np.linalg.norm(y)) ** 2)


def test_cayley_of_inverse(n, rng):
    """Tests cayley(cayley_inverse(U)) = U for random unitary U."""
    for _ in range(100):
        u = random_unitary(n, rng)
        assert_allclose(cayley(cayley_inverse(u)), u, atol=1e-9)


def test_t_star_c_examples(n, rng):
    """Tests (0, X) -> (-iE, (i/2) X)."""
    x = random_hermitian(n, rng)
    q = t_star_c(CotangentHn(Y=np.zeros((n, n)), X=x))
    assert_allclose(q.Z, -1j * np.eye(n), atol=1e-15)
    assert_allclose(q.rho, 0.5j * x, atol=1e-15)
    q.check()

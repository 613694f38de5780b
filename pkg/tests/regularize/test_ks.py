import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.conventions import ENERGY_FACTOR
from app.exceptions import DomainError, MembershipError, RankError
from app.momentum.maps import j_pm, j_pm_tilde
from app.momentum.observables import i_tilde_plus_plus, i_tilde_zero
from app.momentum.sampling import random_rank_one_point
from app.momentum.types import CotangentHn
from app.regularize.classes import (
    canonical_representative,
    class_distance,
    invert_j_pm,
    invert_j_pm_tilde,
    rank_one_factor,
)
from app.regularize.ks import (
    c_reg,
    k_reg,
    ks_section,
    ks_section_rank_one,
    section_residual,
    submersion_r,
)
from app.schema import Realization
from app.twistor_core.forms import change_realization
from app.twistor_core.sampling import complex_gaussian, random_null_twistor, random_twistor
from app.twistor_core.types import TwistorVector


ANTI = Realization.ANTIDIAGONAL


def test_rank_one_factor_examples():
    """Tests the canonical factor, the phase rule and the rank checks."""
    assert_allclose(rank_one_factor(np.diag([1.0, 0.0])), [1.0, 0.0], atol=1e-15)
    u = np.array([1j, 1.0]) / np.sqrt(2.0)
    zeta = rank_one_factor(2.0 * np.outer(u, u.conj()))
    assert_allclose(np.outer(zeta, zeta.conj()), 2.0 * np.outer(u, u.conj()), atol=1e-14)
    assert zeta[0].imag == pytest.approx(0.0, abs=1e-15)
    assert zeta[0].real > 0
    with pytest.raises(RankError):
        rank_one_factor(np.eye(2))
    with pytest.raises(RankError):
        rank_one_factor(-np.diag([1.0, 0.0]))
    with pytest.raises(RankError):
        rank_one_factor(np.zeros((2, 2)))


def test_section_example():
    """Tests (upsilon, zeta) = (1, 1) -> (Y, X) = (1, 1) and the zero-upsilon case."""
    p = ks_section(TwistorVector(realization=ANTI, upper=[1.0], lower=[1.0]))
    assert_allclose(p.Y, [[1.0]])
    assert_allclose(p.X, [[1.0]])
    zeta = np.array([1.0, 2.0j])
    q = ks_section(TwistorVector(realization=ANTI, upper=[0.0, 0.0], lower=zeta))
    assert_allclose(q.Y, np.zeros((2, 2)))
    assert_allclose(q.X, np.outer(zeta, zeta.conj()))


def test_section_domain():
    """Tests that zeta = 0 and non-null twistors are refused."""
    with pytest.raises(DomainError):
        ks_section(TwistorVector(realization=ANTI, upper=[1.0], lower=[0.0]))
    with pytest.raises(MembershipError):
        ks_section(TwistorVector(realization=ANTI, upper=[1j], lower=[1.0]))


def test_section_identities(n, rng):
    """Tests Y zeta = upsilon, hermiticity, phase invariance and R o S = id."""
    for _ in range(200):
        v = random_null_twistor(n, rng, ANTI)
        p = ks_section(v)
        assert section_residual(p, v) <= 1e-12 * (1.0 + np.linalg.norm(v.stacked))
        assert_allclose(p.Y, p.Y.conj().T, atol=1e-14)
        rotated = ks_section(v.scaled(np.exp(1j * rng.uniform(0, 2 * np.pi))))
        assert_allclose(rotated.Y, p.Y, atol=1e-12)
        assert class_distance(submersion_r(p), v) <= 1e-10 * (1.0 + np.linalg.norm(v.stacked))
        assert i_tilde_plus_plus(v) == pytest.approx(ENERGY_FACTOR * i_tilde_zero(p), rel=1e-10)


def test_rank_one_section_domain(rng):
    """Tests that Y = upsilon upsilon^+ / zeta^+ zeta is a section only where upsilon^+ zeta = zeta^+ zeta."""
    zeta = complex_gaussian(rng, 2)
    t = complex_gaussian(rng, 2)
    t -= zeta * np.vdot(zeta, t) / np.vdot(zeta, zeta)
    on_domain = TwistorVector(realization=ANTI, upper=zeta + t, lower=zeta)
    assert section_residual(ks_section_rank_one(on_domain), on_domain) < 1e-12
    off_domain = TwistorVector(realization=ANTI, upper=2.0 * zeta, lower=zeta)
    assert section_residual(ks_section_rank_one(off_domain), off_domain) > 0.1
    with pytest.raises(DomainError):
        ks_section_rank_one(TwistorVector(realization=ANTI, upper=[0.0, 1.0], lower=[1.0, 0.0]))


def test_regularizations_agree(n, rng):
    """Tests that the KS and Cayley regularizations give the same class."""
    for _ in range(200):
        p = random_rank_one_point(n, rng)
        ks_class = change_realization(k_reg(p))
        assert class_distance(c_reg(p), ks_class) <= 1e-9 * (1.0 + np.linalg.norm(ks_class.stacked))


def test_regularization_phase_invariance(rng):
    """Tests that zeta and e^{ia} zeta give identical classes."""
    zeta = complex_gaussian(rng, 3)
    y = np.diag([0.5, -1.0, 2.0]).astype(complex)
    a = k_reg(CotangentHn(Y=y, X=np.outer(zeta, zeta.conj())))
    rotated = zeta * np.exp(0.7j)
    b = k_reg(CotangentHn(Y=y, X=np.outer(rotated, rotated.conj())))
    assert_allclose(a.stacked, b.stacked, atol=1e-12)


def test_inverse_momentum_maps(n, rng):
    """Tests that invert_j_pm and invert_j_pm_tilde recover the class."""
    for _ in range(50):
        v = random_twistor(n, rng)
        u = random_twistor(n, rng, ANTI)
        assert class_distance(invert_j_pm(j_pm(v)), v) < 1e-9 * (1.0 + np.linalg.norm(v.stacked))
        assert class_distance(invert_j_pm_tilde(j_pm_tilde(u)), u) < 1e-9 * (1.0 + np.linalg.norm(u.stacked))


def test_canonical_representative():
    """Tests that the largest entry of zeta is rotated to the positive real axis."""
    v = TwistorVector(realization=ANTI, upper=[1.0, 0.0], lower=[0.1, 2j])
    w = canonical_representative(v)
    assert w.lower[1] == pytest.approx(2.0)
    assert class_distance(v, w) == pytest.approx(0.0, abs=1e-15)

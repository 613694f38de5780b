import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError
from scipy.integrate import IntegrationWarning

from app.dynamics.integrator import integrate_rk4
from app.exceptions import DomainError, QuadratureError
from app.integrable.chart import actions, angles, default_integrable
from app.integrable.hamiltonian import PerturbedSpec, eval_h
from app.integrable.reduction import (
    Libration,
    libration,
    libration_bounds,
    libration_period,
    quadrature_solve,
    reduced_field,
    reduced_field_printed,
    reduced_h,
    reduced_rhs,
    reduced_terms,
)
from app.twistor_core.sampling import random_generic_twistor
from app.verify.integrable import ANHARMONIC, HARMONIC, REDUCED_START, one_degree_system


def test_harmonic_terms():
    """Tests W = 1/4 for g0 = (|eta|^2 |xi|^2)^(-1/2) / 4."""
    spec, chart = one_degree_system(*HARMONIC)
    h0, w = reduced_terms(spec, chart, 2.0, [0.5])
    assert h0 == pytest.approx(2.0)
    assert w == pytest.approx(0.25)


def test_harmonic_period_and_bounds():
    i1, psi1, c = REDUCED_START
    spec, chart = one_degree_system(*HARMONIC)
    energy = i1 + 0.5 * np.cos(psi1)
    lower, upper = libration_bounds(spec, chart, i1, psi1, c)
    assert lower == pytest.approx(energy - 0.5, abs=1e-10)
    assert upper == pytest.approx(energy + 0.5, abs=1e-10)
    assert libration_period(spec, chart, i1, psi1, c) == pytest.approx(2.0 * np.pi, rel=1e-9)


def test_harmonic_quadrature():
    """Tests I(t) = I0 + (cos psi0 - cos(psi0 + t)) / 2."""
    i1, psi1, c = REDUCED_START
    spec, chart = one_degree_system(*HARMONIC)
    times, values = quadrature_solve(spec, chart, i1, psi1, c, 2.0 * np.pi, 41)
    assert_allclose(values, i1 + 0.5 * (np.cos(psi1) - np.cos(psi1 + times)), atol=1e-7)


@pytest.mark.parametrize("psi1", [0.7, -0.7, 2.5])
def test_quadrature_matches_reduced_rk4(psi1):
    i1, _, c = REDUCED_START
    spec, chart = one_degree_system(*ANHARMONIC)
    period = libration_period(spec, chart, i1, psi1, c)
    times, values = quadrature_solve(spec, chart, i1, psi1, c, period, 21)
    traj = integrate_rk4(reduced_rhs(spec, chart, c), np.array([i1, psi1]), period, period / 2000)
    assert_allclose(values, traj.states[::100, 0].real, atol=1e-6)


def test_reduced_energy_is_conserved():
    i1, psi1, c = REDUCED_START
    spec, chart = one_degree_system(*ANHARMONIC)
    traj = integrate_rk4(
        reduced_rhs(spec, chart, c),
        np.array([i1, psi1]),
        5.0,
        2e-3,
        {"H": lambda s: reduced_h(spec, chart, s[0].real, s[1].real, c)},
    )
    assert traj.drift("H") < 1e-7


def test_reduced_h_equals_h(n, rng):
    """Tests H_red(I_1, psi_1; c) = H on twistors."""
    chart, k, l = default_integrable(n)
    h0 = " + ".join(f"eta{j} + xi{j}" for j in range(1, n + 1)) + " + 0.1*eta1*xi1"
    spec = PerturbedSpec.from_expressions(h0, "0.5", k, l)
    for _ in range(20):
        v = random_generic_twistor(n, rng)
        values = actions(chart, v)
        psi = angles(chart, v)
        assert reduced_h(spec, chart, values[0], psi[0], values[1:]) == pytest.approx(eval_h(spec, v), rel=1e-10)


def test_printed_field_agrees_only_where_g0_is_one():
    """Tests the variant field against the exact one at unit and non-unit amplitude."""
    chart, k, l = default_integrable(1)
    unit = PerturbedSpec.from_expressions("eta1", "(eta1*xi1)**(-0.5)", k, l)
    exact = reduced_field(unit, chart, (2.0, 0.7), [0.5])
    printed = reduced_field_printed(unit, chart, (2.0, 0.7), [0.5])
    assert_allclose(printed, exact, atol=1e-6)

    spec, chart = one_degree_system(*ANHARMONIC)
    exact = reduced_field(spec, chart, (2.0, 0.7), [0.5])
    printed = reduced_field_printed(spec, chart, (2.0, 0.7), [0.5])
    assert printed[0] == pytest.approx(exact[0])
    assert abs(printed[1] - exact[1]) > 1e-3


def test_degenerate_libration():
    """Tests that g0 = 0 freezes I_1."""
    spec, chart = one_degree_system("eta1", "0")
    motion = libration(spec, chart, 2.0, 0.3, [0.5])
    assert motion.degenerate
    _, values = quadrature_solve(spec, chart, 2.0, 0.3, [0.5], 1.0, 5)
    assert_allclose(values, 2.0)


def test_reduction_domain():
    spec, chart = one_degree_system(*HARMONIC)
    with pytest.raises(DomainError):
        reduced_h(spec, chart, 0.1, 0.0, [0.5])
    with pytest.raises(DomainError):
        reduced_h(spec, chart, 2.0, 0.0, [0.5, 1.0])


def test_unbounded_libration():
    """Tests that a flat h0 with growing amplitude has no upper turning point."""
    spec, chart = one_degree_system("0", "1")
    with pytest.raises(QuadratureError):
        libration_bounds(spec, chart, 2.0, 1.0, [0.5], max_doublings=10)


@pytest.mark.parametrize("system", [HARMONIC, ANHARMONIC])
def test_turning_points_integrate_cleanly(system):
    """Tests that the time integral converges at both turning points without warnings."""
    i1, psi1, c = REDUCED_START
    spec, chart = one_degree_system(*system)
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        motion = libration(spec, chart, i1, psi1, c)
        times, values = quadrature_solve(spec, chart, i1, psi1, c, motion.period, 11)
    assert values[0] == pytest.approx(i1, abs=1e-9)
    assert values[-1] == pytest.approx(i1, abs=1e-7)
    assert np.all(values >= motion.lower - 1e-12)
    assert np.all(values <= motion.upper + 1e-12)


def test_libration_is_frozen():
    motion = Libration(lower=1.0, upper=2.0, energy=3.0, half_period=0.5)
    assert motion.period == 1.0
    with pytest.raises(ValidationError):
        motion.lower = 0.0

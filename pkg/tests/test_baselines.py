import math

import numpy as np
import pytest

import szegoq as sq
from szegoq.baselines import (LaurentApproximation, estimate_from_moments,
                              fixed_laurent_bound, fourier_coefficients,
                              least_squares_laurent, optimal_laurent)
from szegoq.functions import Gibbs


def test_fourier_coefficients_match_numerical_integral():
    beta, dt, d = 0.7, 0.15, 6
    approx = fourier_coefficients(beta, dt, d)
    theta = np.linspace(-math.pi, math.pi, 200001)
    target = np.exp(beta * theta / dt)
    for j in range(-(d - 1), d):
        integrand = target * np.exp(-1j * j * theta)
        want = np.trapezoid(integrand, theta) / (2 * math.pi)
        assert approx.coefficients[j + d - 1] == pytest.approx(want, rel=1e-6)


def test_fourier_zero_temperature_limit():
    approx = fourier_coefficients(0.0, 0.2, 5)
    want = np.zeros(9, dtype=complex)
    want[4] = 1.0
    assert np.allclose(approx.coefficients, want)
    assert approx.error < 1e-12


def test_fourier_error_is_sup_norm_of_truncation():
    approx = fourier_coefficients(1.0, 0.15, 8)
    assert approx.error > 0
    # truncation error cannot exceed the target's sup norm by much
    assert approx.error < 2 * math.exp(math.pi / 0.15)


def test_estimate_from_moments(spec6, psi_afm6, m_afm6):
    f = sq.random_laurent(3, seed=2)
    approx = LaurentApproximation(degree=3, coefficients=f.coefficients,
                                  error=0.0, method="exact")
    got = estimate_from_moments(m_afm6, approx)
    want = sq.exact_functional(spec6, psi_afm6, psi_afm6, f)
    assert got == pytest.approx(want, abs=1e-12)
    big = LaurentApproximation(degree=m_afm6.degree + 1,
                               coefficients=np.zeros(2 * m_afm6.degree + 3),
                               error=0.0, method="x")
    with pytest.raises(ValueError):
        estimate_from_moments(m_afm6, big)


def test_laurent_approximation_validation():
    with pytest.raises(ValueError):
        LaurentApproximation(degree=2, coefficients=np.zeros(3), error=0.0,
                             method="x")
    with pytest.raises(ValueError):
        LaurentApproximation(degree=1, coefficients=np.zeros(3), error=-1.0,
                             method="x")
    data = LaurentApproximation(degree=1, coefficients=np.zeros(3), error=0.5,
                                method="x").to_json_dict()
    assert set(data) == {"degree", "method", "coefficients", "error"}


def test_fixed_laurent_bound_matches_grid_minimum():
    beta, h_norm, d = 1.65, 20.0, 50
    bound, gamma = fixed_laurent_bound(beta, h_norm, d)
    gammas = np.linspace(1e-6, 1 - 1e-6, 200001)
    exps = math.log(4.0) + beta * h_norm / gammas - 0.5 * d * (1 - gammas)
    # golden section must do at least as well as the grid, and not much better
    assert math.log(bound) <= exps.min() + 1e-9
    assert math.log(bound) == pytest.approx(exps.min(), abs=1e-4)
    assert 0 < gamma < 1
    rel, _ = fixed_laurent_bound(beta, h_norm, d, relative=True)
    assert math.log(rel) == pytest.approx(math.log(bound) - beta * h_norm, abs=1e-9)


def test_fixed_laurent_bound_gamma_saturates_for_small_d():
    # unconstrained minimizer sqrt(2 beta ||H|| / d) exceeds 1 for small d
    _, gamma = fixed_laurent_bound(1.0, 33.0, 10)
    assert gamma > 0.999
    _, gamma = fixed_laurent_bound(1.0, 33.0, 200)
    assert gamma == pytest.approx(math.sqrt(66.0 / 200.0), abs=1e-3)
    with pytest.raises(ValueError):
        fixed_laurent_bound(-1.0, 33.0, 10)


def test_optimal_laurent_recovers_laurent_target(spec6):
    f = sq.random_laurent(3, seed=4)
    approx = optimal_laurent(spec6, f, 6)  # degree 5 >= target degree 3
    assert approx.error < 1e-10
    assert np.allclose(approx.as_function()(spec6.eigenphases()),
                       f(spec6.eigenphases()), atol=1e-9)


def test_optimal_laurent_minimax_beats_least_squares(spec6):
    f = Gibbs(beta=1.0, dt=spec6.dt)
    opt = optimal_laurent(spec6, f, 5)
    ls = least_squares_laurent(spec6, f, 5)
    assert opt.error <= ls.error * (1 + 1e-6)
    assert opt.method == "optimal_laurent"


def test_optimal_laurent_support_mode(spec6, psi_afm6):
    f = Gibbs(beta=1.0, dt=spec6.dt)
    sup = optimal_laurent(spec6, f, 4, mode="support", psi0=psi_afm6)
    allm = optimal_laurent(spec6, f, 4, mode="all")
    # fewer constraint points can only help the minimax error
    assert sup.error <= allm.error * (1 + 1e-9)
    with pytest.raises(ValueError):
        optimal_laurent(spec6, f, 4, mode="support")
    with pytest.raises(ValueError):
        optimal_laurent(spec6, f, 4, mode="weighted")


def test_optimal_laurent_underdetermined_interpolates(spec6, psi_afm6):
    # the antiferromagnet supports 10 distinct phases; degree 10 gives 21
    # coefficients, so an exact interpolant exists
    f = Gibbs(beta=1.0, dt=spec6.dt)
    approx = optimal_laurent(spec6, f, 11, mode="support", psi0=psi_afm6)
    scale = float(np.max(np.abs(f(spec6.eigenphases()))))
    assert approx.error < 1e-12 * scale  # interpolation exact to roundoff

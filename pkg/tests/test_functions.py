import json
import math

import numpy as np
import pytest

from szegoq.functions import (Gibbs, Greens, Laurent, Monomial, evaluate,
                              laurent_from_json, node_phase, node_to_energy,
                              parse_function, random_laurent)


def test_node_phase_branch_convention():
    # numpy's angle(-1) is +pi; our convention folds it to -pi
    assert node_phase(-1.0 + 0j) == pytest.approx(-math.pi)
    assert node_phase(1j) == pytest.approx(math.pi / 2)
    z = np.exp(1j * np.array([-math.pi, -1.0, 0.0, 2.0]))
    ph = node_phase(z)
    assert np.all(ph >= -math.pi) and np.all(ph < math.pi)


def test_node_to_energy_round_trip():
    dt = 0.1
    for e in (-5.0, 0.0, 3.7):
        z = np.exp(-1j * e * dt)
        assert node_to_energy(z, dt) == pytest.approx(e, abs=1e-12)
    with pytest.raises(ValueError):
        node_to_energy(2.0 + 0j, dt)
    with pytest.raises(ValueError):
        node_to_energy(1.0 + 0j, 0.0)


def test_branch_cut_aliasing_is_symmetric():
    # |E| dt = pi lands exactly on z = -1; both signs reconstruct as +pi/dt
    dt = 0.25
    e = math.pi / dt
    for sign in (1.0, -1.0):
        z = np.exp(-1j * sign * e * dt)
        assert node_to_energy(z, dt) == pytest.approx(e)


def test_laurent_evaluation():
    # f(z) = 2 z^-1 + 1 + 3i z
    f = Laurent(np.array([2.0, 1.0, 3j]))
    assert f.degree == 1
    z = np.exp(1j * 0.3)
    want = 2.0 / z + 1.0 + 3j * z
    assert f(z) == pytest.approx(want)
    zz = np.exp(1j * np.linspace(-3, 3, 7))
    assert np.allclose(f(zz), 2.0 / zz + 1.0 + 3j * zz)


def test_laurent_validation():
    with pytest.raises(ValueError):
        Laurent(np.array([1.0, 2.0]))  # even length
    with pytest.raises(ValueError):
        Laurent(np.array([1.0, np.nan, 1.0]))


def test_monomial_negative_power_is_inverse():
    z = np.exp(1j * 0.7)
    assert Monomial(-3)(z) == pytest.approx(z**-3)
    assert Monomial(5)(z) == pytest.approx(z**5)


def test_gibbs_values():
    dt = 0.2
    f = Gibbs(beta=1.5, dt=dt)
    assert f(1.0 + 0j) == pytest.approx(1.0)
    e = 2.0
    assert f(np.exp(-1j * e * dt)) == pytest.approx(math.exp(-1.5 * e))
    with pytest.raises(ValueError):
        Gibbs(beta=1.0, dt=0.0)


def test_greens_values():
    dt, chi, omega = 0.2, 0.1, -0.5
    f = Greens(omega=omega, chi=chi, dt=dt)
    e = 1.3
    want = 1.0 / (e - omega - 1j * chi)
    assert f(np.exp(-1j * e * dt)) == pytest.approx(want)
    with pytest.raises(ValueError):
        Greens(omega=0.0, chi=0.0, dt=dt)
    with pytest.raises(ValueError):
        Greens(omega=0.0, chi=-0.1, dt=dt)


def test_evaluate_checks_modulus():
    with pytest.raises(ValueError):
        evaluate(Monomial(1), 1.5 + 0j)
    assert evaluate(Monomial(2), 1j) == pytest.approx(-1.0)


def test_random_laurent_properties():
    f1 = random_laurent(4, seed=9)
    f2 = random_laurent(4, seed=9)
    assert np.array_equal(f1.coefficients, f2.coefficients)
    assert f1.degree == 4
    assert np.sum(np.abs(f1.coefficients)) == pytest.approx(1.0)
    assert max(abs(f1.coefficients[0]), abs(f1.coefficients[-1])) > 0
    assert random_laurent(0, seed=1).degree == 0
    with pytest.raises(ValueError):
        random_laurent(-1, seed=0)


def test_parse_function_variants(tmp_path):
    assert parse_function("monomial:5") == Monomial(5)
    g = parse_function("gibbs:beta=1.5", dt=0.2)
    assert isinstance(g, Gibbs) and g.beta == 1.5 and g.dt == 0.2
    gr = parse_function("greens:omega=-3.2,chi=0.05", dt=0.2)
    assert isinstance(gr, Greens) and gr.omega == -3.2 and gr.chi == 0.05
    gr2 = parse_function("greens:omega=0", dt=0.2)
    assert gr2.chi == 0.1  # default broadening
    with pytest.raises(ValueError):
        parse_function("gibbs:beta=1")  # dt required
    with pytest.raises(ValueError):
        parse_function("chebyshev:3")

    f = random_laurent(2, seed=5)
    path = tmp_path / "poly.json"
    path.write_text(json.dumps({
        "coefficients": [{"re": float(c.real), "im": float(c.imag)}
                         for c in f.coefficients]}))
    back = parse_function(f"laurent:{path}")
    assert np.allclose(back.coefficients, f.coefficients)
    assert np.allclose(laurent_from_json(str(path)).coefficients, f.coefficients)

import numpy as np
import pytest

import szegoq as sq


@pytest.fixture(scope="session")
def spec12():
    """1x2 chain: 4-dim spectrum {-4, 0, 0, 4}, handy for worked examples."""
    return sq.spectral_decompose(sq.build_heisenberg(1, 2, 1.0, 1.0, 1.0, 2.0))


@pytest.fixture(scope="session")
def spec6():
    """2x3 lattice, the desk-scale default model."""
    return sq.spectral_decompose(sq.build_heisenberg(2, 3, 1.0, 1.0, 1.0, 2.0))


@pytest.fixture(scope="session")
def psi_afm6():
    return sq.antiferromagnet_state(6)


@pytest.fixture(scope="session")
def psi_rand6():
    return sq.random_state(6, seed=1)


@pytest.fixture(scope="session")
def m_afm6(spec6, psi_afm6):
    return sq.moments(spec6, psi_afm6, 24)


@pytest.fixture(scope="session")
def m_rand6(spec6, psi_rand6):
    return sq.moments(spec6, psi_rand6, 24)


def reproduction_error(rule, m, d):
    """Worst |sum_k w_k node_k^j - X_j| over |j| <= d-1."""
    worst = 0.0
    for j in range(-(d - 1), d):
        powers = rule.nodes**j if j >= 0 else np.conj(rule.nodes) ** (-j)
        worst = max(worst, abs(np.sum(rule.weights * powers) - m.moment(j)))
    return worst

import numpy as np
import pytest

import szegoq as sq
from szegoq.krylov import (IllConditionedGramError, assemble, default_eta,
                           gram_schmidt_reference, orthonormalize,
                           project_to_unitary, regularize, stable_unitary)
from szegoq.linalg import unitary_eigendecompose


def test_assemble_toeplitz_structure(m_afm6):
    d = 5
    pair = assemble(m_afm6, d)
    for i in range(d):
        for j in range(d):
            assert pair.u_mat[i, j] == m_afm6.moment(j - i + 1)
            assert pair.s_mat[i, j] == m_afm6.moment(j - i)
    assert pair.dim == d
    # Hermitian Gram; both matrices constant along diagonals
    assert np.allclose(pair.s_mat, pair.s_mat.conj().T)
    assert np.array_equal(pair.u_mat[1:, 1:], pair.u_mat[:-1, :-1])
    assert np.array_equal(pair.s_mat[1:, 1:], pair.s_mat[:-1, :-1])


def test_assemble_bounds(m_afm6):
    with pytest.raises(ValueError):
        assemble(m_afm6, 0)
    with pytest.raises(ValueError):
        assemble(m_afm6, m_afm6.degree + 1)


def test_default_eta():
    assert default_eta(8, 0.0) == 1e-12
    assert default_eta(8, 1e-4) == pytest.approx(2e-4 * np.sqrt(16.0))


def test_regularize_passthrough_when_well_conditioned(m_afm6):
    pair = assemble(m_afm6, 4)
    reg = regularize(pair.s_mat, 1e-12)
    assert reg.shift == 0.0
    assert np.allclose(reg.s_tilde, 0.5 * (pair.s_mat + pair.s_mat.conj().T))


def test_regularize_lifts_least_eigenvalue():
    s = np.diag([1.0, -1e-6])
    reg = regularize(s, 1e-4)
    lam = np.linalg.eigvalsh(reg.s_tilde)
    assert reg.shift == pytest.approx(1e-4 + 1e-6)
    assert lam.min() >= 1e-4 - 1e-12
    with pytest.raises(ValueError):
        regularize(s, 0.0)


def test_orthonormalize_and_projection(m_afm6):
    pair = assemble(m_afm6, 6)
    reg = regularize(pair.s_mat, 1e-12)
    u_tilde = orthonormalize(pair.u_mat, reg)
    # the compression of a unitary to a non-invariant subspace is a
    # contraction: singular values at most 1
    sing = np.linalg.svd(u_tilde, compute_uv=False)
    assert np.all(sing <= 1.0 + 1e-10)
    u_proj = project_to_unitary(u_tilde)
    assert np.allclose(u_proj.conj().T @ u_proj, np.eye(6), atol=1e-12)
    # projection is idempotent on an already-unitary matrix
    assert np.allclose(project_to_unitary(u_proj), u_proj, atol=1e-12)


def test_gram_schmidt_reference_structure(m_afm6):
    pair = assemble(m_afm6, 6)
    h = gram_schmidt_reference(pair, normalize_last=True)
    # upper-Hessenberg: zero below the first subdiagonal
    for i in range(2, 6):
        assert np.all(np.abs(h[i, : i - 1]) < 1e-9)
    assert np.allclose(h.conj().T @ h, np.eye(6), atol=1e-8)


def test_gram_schmidt_matches_stable_pipeline(m_afm6):
    # same spectrum from both paths on well-conditioned noiseless input
    pair = assemble(m_afm6, 6)
    h = gram_schmidt_reference(pair)
    u_stable, _ = stable_unitary(pair, 1e-12)
    lam_ref = np.sort_complex(unitary_eigendecompose(h).eigenvalues)
    lam_stb = np.sort_complex(unitary_eigendecompose(u_stable).eigenvalues)
    assert np.allclose(lam_ref, lam_stb, atol=1e-8)


def test_gram_schmidt_refuses_ill_conditioned(spec6, psi_afm6):
    m = sq.moments(spec6, psi_afm6, 16)
    pair = assemble(m, 12)  # beyond the Krylov rank of this state
    with pytest.raises(IllConditionedGramError):
        gram_schmidt_reference(pair)

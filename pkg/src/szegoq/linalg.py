"""Dense complex matrix kernels used by the quadrature pipeline.

All routines are pure functions on numpy arrays.  Matrices are validated
on entry (finite entries, squareness) and the decompositions come with
explicit reconstruction contracts, tested in ``tests/test_linalg.py``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


class MatrixError(ValueError):
    """Input violates a kernel precondition."""


def as_square_matrix(m) -> np.ndarray:
    """Coerce to a finite, square complex ndarray."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise MatrixError("matrix contains non-finite entries")
    return a


@dataclass(frozen=True)
class HermitianEigensystem:
    """Eigenvalues (real, ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class UnitaryEigensystem:
    """Unit-modulus eigenvalues and orthonormal eigenvector columns.

    Eigenvalues are sorted by phase ascending in [-pi, pi).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eigendecompose(m) -> HermitianEigensystem:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as (M + M^dag)/2 before the solve, so small
    Hermiticity violations (< ~1e-12) are absorbed silently.
    """
    a = as_square_matrix(m)
    a = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(a)
    return HermitianEigensystem(w, v)


def psd_power(m, exponent: float, floor: float) -> np.ndarray:
    """V diag(max(w, floor))^exponent V^dag for Hermitian m.

    `floor` clamps the eigenvalues from below before powering, which makes
    negative exponents safe on regularized Gram matrices.  The output is
    re-Hermitized to kill roundoff asymmetry.
    """
    if not (floor > 0):
        raise MatrixError(f"floor must be positive, got {floor}")
    eig = hermitian_eigendecompose(m)
    w = np.maximum(eig.eigenvalues, floor)
    v = eig.eigenvectors
    out = (v * w**exponent) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SVD of a square matrix: returns (P, s, Q) with M = P diag(s) Q^dag.

    Singular values s are nonnegative and descending; P, Q are unitary.
    """
    a = as_square_matrix(m)
    p, s, qh = np.linalg.svd(a)
    return p, s, qh.conj().T


def unitary_eigendecompose(m, unitarity_tol: float = 1e-6) -> UnitaryEigensystem:
    """Eigendecomposition of a (numerically) unitary matrix.

    Uses the complex Schur form: for a normal matrix the Schur factor is
    diagonal up to roundoff, so the Schur vectors are an exactly orthonormal
    eigenbasis, including inside degenerate clusters.  Eigenvalues are
    renormalized to unit modulus as a final step.
    """
    a = as_square_matrix(m)
    d = a.shape[0]
    dev = np.linalg.norm(a.conj().T @ a - np.eye(d))
    if dev > unitarity_tol:
        raise MatrixError(f"matrix fails unitarity precheck: ||M^dag M - I|| = {dev:.3e}")
    t, z = scipy.linalg.schur(a, output="complex")
    lam = np.diag(t).copy()
    mod = np.abs(lam)
    if np.any(mod == 0):
        raise MatrixError("zero eigenvalue on a unitary matrix")
    lam = lam / mod
    ph = np.angle(lam)
    ph = np.where(ph >= np.pi, ph - 2.0 * np.pi, ph)
    order = np.argsort(ph, kind="stable")
    return UnitaryEigensystem(lam[order], z[:, order])

"""Toeplitz Krylov pair assembly, Tikhonov regularization, stable
orthonormalization, and projection to the nearest unitary.

The stable pipeline is assemble -> regularize -> orthonormalize ->
project_to_unitary.  ``gram_schmidt_reference`` is the idealized,
numerically fragile path kept only for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import hermitian_eigendecompose, psd_power, svd
from .moments import MomentSequence


class IllConditionedGramError(ValueError):
    """Gram matrix too ill-conditioned for the reference path."""


@dataclass(frozen=True)
class KrylovPair:
    """Toeplitz projections U'_{ij} = X_{j-i+1}, S'_{ij} = X_{j-i}."""

    u_mat: np.ndarray
    s_mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.u_mat.shape[0]


@dataclass(frozen=True)
class RegularizedGram:
    """Gram matrix shifted so its least eigenvalue is at least eta."""

    s_tilde: np.ndarray
    eta: float
    shift: float


def assemble(m: MomentSequence, d: int) -> KrylovPair:
    if d < 1:
        raise ValueError("Krylov dimension must be >= 1")
    if d > m.degree:
        raise ValueError(f"dimension {d} exceeds available moments (degree {m.degree})")
    u = np.empty((d, d), dtype=complex)
    s = np.empty((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            u[i, j] = m.moment(j - i + 1)
            s[i, j] = m.moment(j - i)
    return KrylovPair(u_mat=u, s_mat=s)


def default_eta(d: int, sigma: float = 0.0) -> float:
    """Regularization strength: 2 sigma sqrt(2d) under declared noise,
    floored at 1e-12 (the Gram perturbation from i.i.d. entry noise scales
    like sigma sqrt(d))."""
    return max(1e-12, 2.0 * sigma * math.sqrt(2.0 * d))


def regularize(s_prime, eta: float) -> RegularizedGram:
    """Shift S' by (eta - lambda_min) I when lambda_min < eta, else pass through."""
    if not eta > 0:
        raise ValueError("eta must be positive")
    s = np.asarray(s_prime, dtype=complex)
    s = 0.5 * (s + s.conj().T)
    lam_min = float(hermitian_eigendecompose(s).eigenvalues[0])
    shift = eta - lam_min if lam_min < eta else 0.0
    s_tilde = s + shift * np.eye(s.shape[0]) if shift else s
    return RegularizedGram(s_tilde=s_tilde, eta=float(eta), shift=float(shift))


def orthonormalize(u_prime, reg: RegularizedGram) -> np.ndarray:
    """S~^{-1/2} U' S~^{-1/2}, the stable change to the orthonormal basis."""
    inv_half = psd_power(reg.s_tilde, -0.5, floor=reg.eta)
    return inv_half @ np.asarray(u_prime, dtype=complex) @ inv_half


def project_to_unitary(m) -> np.ndarray:
    """Nearest unitary PQ^dag from the SVD M = P D Q^dag."""
    p, _, q = svd(m)
    return p @ q.conj().T


def stable_unitary(pair: KrylovPair, eta: float) -> tuple[np.ndarray, RegularizedGram]:
    """Full stable pipeline on an assembled pair; returns (U~, regularized Gram)."""
    reg = regularize(pair.s_mat, eta)
    u_tilde = orthonormalize(pair.u_mat, reg)
    return project_to_unitary(u_tilde), reg


def gram_schmidt_reference(pair: KrylovPair, normalize_last: bool = True) -> np.ndarray:
    """Idealized path: Gram-Schmidt in the S-inner-product, then represent U.

    Modified Gram-Schmidt with one reorthogonalization pass against the
    inner product <x, y>_S = x^dag S y.  Refuses ill-conditioned S
    (lambda_min <= 1e-10): this path exists for cross-validation only.
    The result is upper-Hessenberg with orthonormal columns except possibly
    the last; ``normalize_last`` applies the isometric fix-up that makes it
    unitary.
    """
    s = 0.5 * (pair.s_mat + pair.s_mat.conj().T)
    lam_min = float(hermitian_eigendecompose(s).eigenvalues[0])
    if lam_min <= 1e-10:
        raise IllConditionedGramError(
            f"Gram matrix lambda_min = {lam_min:.3e} too small for the reference path")
    d = pair.dim
    c = np.eye(d, dtype=complex)
    for i in range(d):
        for _ in range(2):  # MGS + one reorthogonalization pass
            for j in range(i):
                c[:, i] -= (c[:, j].conj() @ (s @ c[:, i])) * c[:, j]
        c[:, i] /= math.sqrt((c[:, i].conj() @ (s @ c[:, i])).real)
    u_tilde = c.conj().T @ pair.u_mat @ c
    if normalize_last:
        u_tilde[:, -1] /= np.linalg.norm(u_tilde[:, -1])
    return u_tilde

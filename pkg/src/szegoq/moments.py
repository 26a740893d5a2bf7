"""Moment data X_j = <psi0|U^j|psi0> computed exactly from spectral data,
optional Gaussian corruption, and the brute-force functional oracle I(f).

These are the quantities a quantum processor would estimate via Hadamard
tests; here they are evaluated spectrally, exact to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import SpectralData


@dataclass(frozen=True)
class NoiseModel:
    """Additive complex Gaussian noise of width sigma, seeded."""

    sigma: float
    seed: int

    def __post_init__(self):
        if not math.isfinite(self.sigma) or self.sigma < 0:
            raise ValueError("sigma must be finite and nonnegative")


@dataclass(frozen=True)
class MomentSequence:
    """Values X_0..X_d; negative indices are implied by X_{-j} = conj(X_j).

    X_0 is pinned to 1 exactly.  ``noise_sigma`` records the width of any
    noise applied, which drives the default regularization strength
    downstream.
    """

    values: np.ndarray
    dt: float
    fingerprint: str = ""
    noise_sigma: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or len(v) < 1:
            raise ValueError("values must be a 1-D array X_0..X_d")
        if v[0] != 1.0:
            raise ValueError("X_0 must be exactly 1")
        object.__setattr__(self, "values", v)

    @property
    def degree(self) -> int:
        return len(self.values) - 1

    def moment(self, j: int) -> complex:
        """X_j for any j with |j| <= degree."""
        if abs(j) > self.degree:
            raise IndexError(f"moment {j} beyond degree {self.degree}")
        return complex(self.values[j]) if j >= 0 else complex(np.conj(self.values[-j]))

    def truncated(self, d: int) -> "MomentSequence":
        if d > self.degree:
            raise IndexError(f"cannot truncate degree {self.degree} to {d}")
        return replace(self, values=self.values[: d + 1])

    def to_json_dict(self) -> dict:
        return {
            "d": self.degree,
            "dt": self.dt,
            "moments": [{"re": float(x.real), "im": float(x.imag)} for x in self.values],
        }

    @classmethod
    def from_json_dict(cls, data: dict, fingerprint: str = "", noise_sigma: float = 0.0):
        vals = np.array([p["re"] + 1j * p["im"] for p in data["moments"]])
        return cls(values=vals, dt=float(data["dt"]),
                   fingerprint=fingerprint, noise_sigma=noise_sigma)


# ---------------------------------------------------------------------------
# state preparation

def basis_state(bits: str, n: int) -> np.ndarray:
    if len(bits) != n or any(b not in "01" for b in bits):
        raise ValueError(f"bitstring {bits!r} does not describe {n} qubits")
    psi = np.zeros(2**n, dtype=complex)
    psi[int(bits, 2)] = 1.0
    return psi


def antiferromagnet_state(n: int) -> np.ndarray:
    """|1010...10> in the fixed qubit order (qubit 0 leftmost)."""
    return basis_state(("10" * n)[:n], n)


def random_state(n: int, seed: int) -> np.ndarray:
    """Haar-like random state: i.i.d. complex Gaussian amplitudes, normalized."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return v / np.linalg.norm(v)


def combo_state(psi0: np.ndarray, psi1: np.ndarray, phase: complex) -> tuple[np.ndarray, float]:
    """Normalized psi0 + phase*psi1 and the normalization constant.

    phase must be one of +1, -1, +i, -i.  Raises on a zero-norm combination
    (psi1 = -phase^-1 psi0).
    """
    if phase not in (1, -1, 1j, -1j):
        raise ValueError("phase must be one of +1, -1, +i, -i")
    v = psi0 + phase * psi1
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise ValueError("zero-norm combination state")
    return v / norm, norm


def prepare_state(spec: str, n: int) -> np.ndarray:
    """Build a state from a plain-text spec.

    ``antiferromagnet`` | ``basis:<bits>`` | ``random:<seed>``.
    Combination states are built programmatically via :func:`combo_state`.
    """
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "antiferromagnet":
        return antiferromagnet_state(n)
    if kind == "basis":
        return basis_state(rest.strip(), n)
    if kind == "random":
        return random_state(n, int(rest))
    raise ValueError(f"unknown state spec {spec!r}")


# ---------------------------------------------------------------------------
# moments and oracles

def moments(spec: SpectralData, psi0: np.ndarray, d: int) -> MomentSequence:
    """X_j = sum_m |gamma_m|^2 exp(-i j E_m dt) for j = 0..d, X_0 forced to 1."""
    if d < 1:
        raise ValueError("d must be >= 1")
    gamma = spec.eigenvectors.conj().T @ psi0
    probs = np.abs(gamma) ** 2
    j = np.arange(d + 1)
    phases = np.exp(-1j * np.outer(j, spec.energies) * spec.dt)
    vals = phases @ probs
    vals[0] = 1.0
    return MomentSequence(values=vals, dt=spec.dt, fingerprint=spec.fingerprint)


def apply_noise(m: MomentSequence, noise: NoiseModel) -> MomentSequence:
    """Add seeded complex Gaussian noise to X_1..X_d; X_0 stays exactly 1."""
    rng = np.random.default_rng(noise.seed)
    g = rng.normal(0.0, 1.0, size=(m.degree, 2))
    vals = m.values.copy()
    vals[1:] += noise.sigma * (g[:, 0] + 1j * g[:, 1])
    return replace(m, values=vals, noise_sigma=noise.sigma)


def exact_functional(spec: SpectralData, psi0: np.ndarray, psi1: np.ndarray, f) -> complex:
    """Brute-force <psi1|f(U)|psi0> = sum_j conj(<e_j|psi1>) <e_j|psi0> f(zeta_j).

    f is evaluated at the unit-circle eigenphases zeta_j = exp(-i E_j dt),
    so any branch-cut aliasing at |E| dt = pi applies consistently to both
    this oracle and the quadrature rule.
    """
    g0 = spec.eigenvectors.conj().T @ psi0
    g1 = spec.eigenvectors.conj().T @ psi1
    zeta = spec.eigenphases()
    return complex(np.sum(np.conj(g1) * g0 * f(zeta)))


def support_counts(spec: SpectralData, psi0: np.ndarray, threshold: float = 1e-12,
                   coverage: float = 0.999, cluster_tol: float = 1e-8) -> dict:
    """Eigenstate support statistics of psi0.

    Returns raw counts (per eigenvector as returned by the solver) and
    subspace-merged counts (degenerate eigenvalues within ``cluster_tol``
    collapsed, each contributing one direction), plus the energy range of
    the minimal set covering ``coverage`` of the probability.
    """
    gamma = spec.eigenvectors.conj().T @ psi0
    probs = np.abs(gamma) ** 2
    energies = spec.energies

    def stats(p, e):
        sup = int(np.sum(p > threshold))
        order = np.argsort(p)[::-1]
        cum = np.cumsum(p[order])
        k = int(np.searchsorted(cum, coverage) + 1)
        sel = order[:k]
        return sup, k, (float(e[sel].min()), float(e[sel].max()))

    raw_support, raw_cover, raw_range = stats(probs, energies)

    merged_e, merged_p, start = [], [], 0
    for i in range(1, len(energies) + 1):
        if i == len(energies) or energies[i] - energies[i - 1] > cluster_tol:
            merged_e.append(energies[start:i].mean())
            merged_p.append(probs[start:i].sum())
            start = i
    m_support, m_cover, m_range = stats(np.array(merged_p), np.array(merged_e))

    return {
        "support_raw": raw_support,
        "covering_raw": raw_cover,
        "energy_range_raw": raw_range,
        "support_merged": m_support,
        "covering_merged": m_cover,
        "energy_range_merged": m_range,
    }

"""Heisenberg XXZ Hamiltonian on a rectangular lattice, dense form, spectrum.

The model is H = sum_i h Z_i + sum_<i,j> (j1 X_i X_j + j2 Y_i Y_j + j3 Z_i Z_j)
with open boundary conditions on a rows x cols grid.  Site (r, c) is qubit
r*cols + c, and qubit 0 is the leftmost Kronecker factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import hermitian_eigendecompose

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

MAX_QUBITS = 14  # dense-diagonalization feasibility guard


class ModelError(ValueError):
    """Invalid model construction request."""


@dataclass(frozen=True)
class PauliTerm:
    coefficient: float
    word: str

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise ModelError("non-finite coefficient")
        if any(c not in PAULI for c in self.word):
            raise ModelError(f"invalid Pauli word {self.word!r}")


@dataclass(frozen=True)
class Hamiltonian:
    n: int
    rows: int
    cols: int
    terms: tuple[PauliTerm, ...]

    def fingerprint(self) -> str:
        return f"heis:{self.rows}x{self.cols}:nterms={len(self.terms)}"


@dataclass(frozen=True)
class SpectralData:
    """Full eigendecomposition of the dense Hamiltonian plus the time step.

    ``energies`` ascending; ``eigenvectors`` orthonormal columns in matching
    order.  ``dt`` satisfies dt <= pi/||H|| so that all eigenphases of
    U = exp(-i H dt) fit in [-pi, pi) without wrapping (up to the branch
    point at energy -||H|| exactly).
    """

    energies: np.ndarray
    eigenvectors: np.ndarray
    dt: float
    h_norm: float
    fingerprint: str = field(default="")

    @property
    def dim(self) -> int:
        return len(self.energies)

    def eigenphases(self) -> np.ndarray:
        """Unit-circle eigenvalues zeta_j = exp(-i E_j dt) of U."""
        return np.exp(-1j * self.energies * self.dt)


def grid_edges(rows: int, cols: int) -> list[tuple[int, int]]:
    """Nearest-neighbor pairs of the open rows x cols grid."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                edges.append((q, q + 1))
            if r + 1 < rows:
                edges.append((q, q + cols))
    return edges


def build_heisenberg(rows: int, cols: int, h: float, j1: float, j2: float,
                     j3: float, max_qubits: int = MAX_QUBITS) -> Hamiltonian:
    if rows < 1 or cols < 1:
        raise ModelError("rows and cols must be >= 1")
    n = rows * cols
    if n > max_qubits:
        raise ModelError(f"{n} qubits exceeds the dense guard of {max_qubits}")

    def word(positions: dict[int, str]) -> str:
        return "".join(positions.get(i, "I") for i in range(n))

    terms = [PauliTerm(h, word({q: "Z"})) for q in range(n)]
    for a, b in grid_edges(rows, cols):
        terms.append(PauliTerm(j1, word({a: "X", b: "X"})))
        terms.append(PauliTerm(j2, word({a: "Y", b: "Y"})))
        terms.append(PauliTerm(j3, word({a: "Z", b: "Z"})))
    return Hamiltonian(n=n, rows=rows, cols=cols, terms=tuple(terms))


def materialize_dense(ham: Hamiltonian) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the Hamiltonian (qubit 0 leftmost factor)."""
    if ham.n > MAX_QUBITS:
        raise ModelError(f"{ham.n} qubits exceeds the dense guard")
    dim = 2**ham.n
    out = np.zeros((dim, dim), dtype=complex)
    for term in ham.terms:
        m = np.ones((1, 1), dtype=complex)
        for c in term.word:
            m = np.kron(m, PAULI[c])
        out += term.coefficient * m
    return out


def spectral_decompose(ham: Hamiltonian, dt: float | None = None) -> SpectralData:
    """Dense eigendecomposition; dt defaults to pi/||H|| with ||H|| = max |E|."""
    dense = materialize_dense(ham)
    eig = hermitian_eigendecompose(dense)
    h_norm = float(np.max(np.abs(eig.eigenvalues)))
    if dt is None:
        dt = math.pi / h_norm
    elif dt > math.pi / h_norm + 1e-12:
        raise ModelError(f"dt = {dt} exceeds pi/||H|| = {math.pi / h_norm}")
    return SpectralData(
        energies=eig.eigenvalues,
        eigenvectors=eig.eigenvectors,
        dt=float(dt),
        h_norm=h_norm,
        fingerprint=ham.fingerprint(),
    )

"""Functions on the unit circle: Laurent polynomials, monomials, the Gibbs
factor, and the retarded Green's function.

Every function object is callable on scalars or arrays of unit-modulus
complex numbers.  Energies are reconstructed from nodes via
E = -arg(z)/dt with arg in [-pi, pi); energies of magnitude exactly
pi/dt alias across the branch cut at z = -1 (arg(-1) maps to -pi, so the
reconstructed energy is +pi/dt for both signs).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


def node_phase(z) -> np.ndarray:
    """arg(z) folded into [-pi, pi) (numpy's angle returns (-pi, pi])."""
    a = np.angle(z)
    return np.where(a >= np.pi, a - 2.0 * np.pi, a)


def node_to_energy(z, dt: float):
    """Energy E = -arg(z)/dt of a unit-circle node."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    _check_unit_modulus(z)
    e = -node_phase(z) / dt
    return e if np.ndim(z) else float(e)


def _check_unit_modulus(z, tol: float = 1e-8):
    if np.any(np.abs(np.abs(np.asarray(z, dtype=complex)) - 1.0) > tol):
        raise ValueError("argument is not on the unit circle")


@dataclass(frozen=True)
class Laurent:
    """f(z) = sum_j alpha_j z^j for j = -deg..deg; coefficients[j + deg] = alpha_j."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or len(c) % 2 == 0:
            raise ValueError("coefficient vector must be 1-D with odd length")
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite Laurent coefficients")
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return (len(self.coefficients) - 1) // 2

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        deg = self.degree
        out = np.zeros(zz.shape, dtype=complex)
        zc = np.conj(zz)  # z^-1 on the unit circle
        for j in range(-deg, deg + 1):
            a = self.coefficients[j + deg]
            if a != 0:
                out = out + a * (zz**j if j >= 0 else zc ** (-j))
        return out if np.ndim(z) else complex(out)


@dataclass(frozen=True)
class Monomial:
    """f(z) = z^p for any integer p (negative powers via conjugation)."""

    power: int

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        p = self.power
        out = zz**p if p >= 0 else np.conj(zz) ** (-p)
        return out if np.ndim(z) else complex(out)


@dataclass(frozen=True)
class Gibbs:
    """f(z) = exp(-beta E(z)), i.e. f(U) = e^{-beta H} on the spectrum of U."""

    beta: float
    dt: float

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("Gibbs requires dt > 0")

    def __call__(self, z):
        out = np.exp(-self.beta * (-node_phase(np.asarray(z, dtype=complex)) / self.dt))
        return out if np.ndim(z) else complex(out)


@dataclass(frozen=True)
class Greens:
    """f(z) = 1 / (E(z) - omega - i chi), the retarded Green's function kernel."""

    omega: float
    chi: float
    dt: float

    def __post_init__(self):
        if not self.chi > 0:
            raise ValueError("Greens requires chi > 0")
        if not self.dt > 0:
            raise ValueError("Greens requires dt > 0")

    def __call__(self, z):
        e = -node_phase(np.asarray(z, dtype=complex)) / self.dt
        out = 1.0 / (e - self.omega - 1j * self.chi)
        return out if np.ndim(z) else complex(out)


SpectralFunction = Laurent | Monomial | Gibbs | Greens


def evaluate(f, z):
    """Evaluate f at unit-modulus z (|z| = 1 within 1e-8 is checked here)."""
    _check_unit_modulus(z)
    return f(z)


def random_laurent(degree: int, seed: int) -> Laurent:
    """Random Laurent polynomial of exact degree with sum_j |alpha_j| = 1.

    Coefficients are i.i.d. complex standard Gaussian, then scaled to unit
    1-norm.  The boundary coefficients are resampled while both are tiny, so
    the polynomial has exact degree `degree`.  Deterministic per seed.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    rng = np.random.default_rng(seed)
    n = 2 * degree + 1
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    while degree > 0 and max(abs(c[0]), abs(c[-1])) < 1e-3:
        c[0] = rng.standard_normal() + 1j * rng.standard_normal()
        c[-1] = rng.standard_normal() + 1j * rng.standard_normal()
    c /= np.sum(np.abs(c))
    return Laurent(c)


def laurent_from_json(path: str) -> Laurent:
    with open(path) as fh:
        data = json.load(fh)
    coeffs = np.array([p["re"] + 1j * p["im"] for p in data["coefficients"]])
    return Laurent(coeffs)


def parse_function(text: str, dt: float | None = None):
    """Parse a CLI/config function spec.

    Syntax: ``laurent:file.json``, ``monomial:5``, ``gibbs:beta=1``,
    ``greens:omega=-3.2,chi=0.1``.  Gibbs and Greens need the model dt.
    """
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "laurent":
        return laurent_from_json(rest)
    if kind == "monomial":
        return Monomial(int(rest))
    params = {}
    for item in rest.split(","):
        if item.strip():
            key, _, val = item.partition("=")
            params[key.strip()] = float(val)
    if kind == "gibbs":
        if dt is None:
            raise ValueError("gibbs function needs the model dt")
        return Gibbs(beta=params["beta"], dt=dt)
    if kind == "greens":
        if dt is None:
            raise ValueError("greens function needs the model dt")
        return Greens(omega=params["omega"], chi=params.get("chi", 0.1), dt=dt)
    raise ValueError(f"unknown function spec {text!r}")

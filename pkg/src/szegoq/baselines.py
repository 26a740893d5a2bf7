"""Baseline approximations of <psi0|f(U)|psi0> from the same moment data:
truncated Fourier series, the fixed-Laurent error bound, and the optimal
(minimax over the spectrum) Laurent approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import Laurent, node_phase
from .model import SpectralData
from .moments import MomentSequence


@dataclass(frozen=True)
class LaurentApproximation:
    """Coefficients alpha_j, j = -degree..degree, plus the achieved error."""

    degree: int
    coefficients: np.ndarray
    error: float
    method: str

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if len(c) != 2 * self.degree + 1:
            raise ValueError("coefficient count does not match degree")
        if not np.all(np.isfinite(c)) or not self.error >= 0:
            raise ValueError("non-finite approximation")
        object.__setattr__(self, "coefficients", c)

    def as_function(self) -> Laurent:
        return Laurent(self.coefficients)

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "method": self.method,
            "coefficients": [{"re": float(c.real), "im": float(c.imag)}
                             for c in self.coefficients],
            "error": self.error,
        }


def fourier_coefficients(beta: float, dt: float, d: int) -> LaurentApproximation:
    """Truncated Fourier series of the Gibbs factor on the circle.

    Target g(theta) = e^{beta theta / dt} (= e^{-beta E} under
    E = -theta/dt); the closed-form coefficients are
    c_j = (-1)^j sinh(pi beta/dt) / (pi (beta/dt - i j)), kept for |j| <= d-1.
    The reported error is the sup-norm of the truncation on a circle grid.
    """
    if beta < 0 or not dt > 0 or d < 1:
        raise ValueError("need beta >= 0, dt > 0, d >= 1")
    g = d - 1
    j = np.arange(-g, g + 1)
    if beta == 0:
        coeffs = (j == 0).astype(complex)
    else:
        a = beta / dt
        coeffs = ((-1.0) ** j) * math.sinh(math.pi * a) / (math.pi * (a - 1j * j))
    theta = np.linspace(-math.pi, math.pi, 4001)
    target = np.exp(beta * theta / dt)
    series = np.exp(1j * np.outer(theta, j)) @ coeffs
    err = float(np.max(np.abs(series - target)))
    return LaurentApproximation(degree=g, coefficients=coeffs, error=err, method="fourier")


def estimate_from_moments(m: MomentSequence, approx: LaurentApproximation) -> complex:
    """sum_j alpha_j X_j using X_{-j} = conj(X_j)."""
    g = approx.degree
    if g > m.degree:
        raise ValueError(f"approximation degree {g} exceeds moment degree {m.degree}")
    return complex(sum(approx.coefficients[j + g] * m.moment(j) for j in range(-g, g + 1)))


def _golden_minimize(fun, lo: float, hi: float, tol: float = 1e-10) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c1 = b - invphi * (b - a)
    c2 = a + invphi * (b - a)
    f1, f2 = fun(c1), fun(c2)
    while b - a > tol:
        if f1 < f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - invphi * (b - a)
            f1 = fun(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + invphi * (b - a)
            f2 = fun(c2)
    return 0.5 * (a + b)


def fixed_laurent_bound(beta: float, h_norm: float, d: int,
                        relative: bool = False) -> tuple[float, float]:
    """Analytic error bound 4 exp(beta ||H||/gamma - (d/2)(1 - gamma)) for the
    fixed degree-d Laurent construction, minimized over gamma in (0, 1).

    The minimization is golden-section to 1e-10 in gamma.  With
    ``relative`` the bound is divided by ||e^{-beta H}|| = e^{beta ||H||}.
    Returns (bound, gamma_star).
    """
    if beta < 0 or h_norm < 0 or d < 1:
        raise ValueError("need beta, h_norm >= 0 and d >= 1")
    bh = beta * h_norm

    def exponent(gamma):
        return bh / gamma + 0.5 * d * gamma

    gamma = _golden_minimize(exponent, 1e-12, 1.0 - 1e-12)
    log_bound = math.log(4.0) + bh / gamma - 0.5 * d * (1.0 - gamma)
    if relative:
        log_bound -= bh
    return math.exp(log_bound), gamma


def _distinct_circle_points(z: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Cluster unit-circle points by phase; one representative per cluster."""
    ph = np.sort(node_phase(z))
    reps, start = [], 0
    for i in range(1, len(ph) + 1):
        if i == len(ph) or ph[i] - ph[i - 1] > tol:
            reps.append(ph[start:i].mean())
            start = i
    # wrap-around cluster at the +-pi branch
    if len(reps) > 1 and (reps[0] + 2 * math.pi) - reps[-1] < tol:
        merged = 0.5 * (reps[0] + reps[-1] + 2 * math.pi)
        reps = [merged if merged < math.pi else merged - 2 * math.pi] + reps[1:-1]
    return np.exp(1j * np.array(reps))


def _power_matrix(z: np.ndarray, g: int) -> np.ndarray:
    """Columns z^j for j = -g..g (negative powers via conjugation, |z| = 1)."""
    cols = [np.conj(z) ** (-j) if j < 0 else z**j for j in range(-g, g + 1)]
    return np.stack(cols, axis=1)


def optimal_laurent(spec: SpectralData, f, d: int, mode: str = "all",
                    psi0: np.ndarray | None = None,
                    max_iter: int = 500) -> LaurentApproximation:
    """Minimax Laurent approximation of f over the eigenvalues of U.

    Minimizes max_i |f(zeta_i) - sum_j alpha_j zeta_i^j| over the distinct
    eigenphases via Lawson's iteratively reweighted least squares
    (w <- w * residual, renormalized; stop on < 1e-12 relative change of
    the max residual).  ``mode="support"`` restricts to eigenphases where
    psi0 has weight above 1e-12.  When the system is underdetermined the
    exact interpolant is returned with error 0.
    """
    if mode not in ("all", "support"):
        raise ValueError("mode must be 'all' or 'support'")
    zeta = spec.eigenphases()
    if mode == "support":
        if psi0 is None:
            raise ValueError("mode='support' needs psi0")
        probs = np.abs(spec.eigenvectors.conj().T @ psi0) ** 2
        zeta = zeta[probs > 1e-12]
    pts = _distinct_circle_points(zeta)
    g = d - 1
    a_mat = _power_matrix(pts, g)
    b = np.asarray(f(pts), dtype=complex)

    if len(pts) <= 2 * g + 1:
        alpha, *_ = np.linalg.lstsq(a_mat, b, rcond=None)
        err = float(np.max(np.abs(b - a_mat @ alpha)))
        return LaurentApproximation(degree=g, coefficients=alpha, error=err,
                                    method="optimal_laurent")

    w = np.full(len(pts), 1.0 / len(pts))
    prev = math.inf
    alpha = np.zeros(2 * g + 1, dtype=complex)
    max_res = 0.0
    for _ in range(max_iter):
        sw = np.sqrt(w)
        alpha, *_ = np.linalg.lstsq(a_mat * sw[:, None], b * sw, rcond=None)
        res = np.abs(b - a_mat @ alpha)
        max_res = float(res.max())
        if abs(max_res - prev) < 1e-12 * max(max_res, 1e-300):
            break
        prev = max_res
        w = w * res
        total = w.sum()
        if total <= 0:
            break
        w = w / total
    return LaurentApproximation(degree=g, coefficients=alpha, error=max_res,
                                method="optimal_laurent")


def least_squares_laurent(spec: SpectralData, f, d: int, mode: str = "all",
                          psi0: np.ndarray | None = None) -> LaurentApproximation:
    """Plain (unweighted) least-squares fallback; error is the max residual."""
    zeta = spec.eigenphases()
    if mode == "support":
        if psi0 is None:
            raise ValueError("mode='support' needs psi0")
        probs = np.abs(spec.eigenvectors.conj().T @ psi0) ** 2
        zeta = zeta[probs > 1e-12]
    pts = _distinct_circle_points(zeta)
    g = d - 1
    a_mat = _power_matrix(pts, g)
    b = np.asarray(f(pts), dtype=complex)
    alpha, *_ = np.linalg.lstsq(a_mat, b, rcond=None)
    err = float(np.max(np.abs(b - a_mat @ alpha)))
    return LaurentApproximation(degree=g, coefficients=alpha, error=err,
                                method="least_squares")

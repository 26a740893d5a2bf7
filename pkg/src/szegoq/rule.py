"""Szego quadrature rules: extraction from the stable Krylov pipeline and
application to functions on the unit circle.

Nodes are the eigenvalues of U~; weights are the squared magnitudes of
the zeroth components of its eigenvectors mapped back through S~^{1/2},
so that sum_k w_k node_k^j reproduces the moment X_j for |j| <= d-1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .functions import node_phase
from .krylov import assemble, default_eta, stable_unitary
from .linalg import psd_power, unitary_eigendecompose
from .model import SpectralData
from .moments import MomentSequence, moments


@dataclass(frozen=True)
class SzegoRule:
    """d-node quadrature rule on the unit circle: f -> sum_k w_k f(node_k).

    Nodes are unit-modulus, sorted by phase ascending in [-pi, pi).
    Noiselessly the raw weight sum equals 1 + shift, where shift is the
    Tikhonov shift applied to the Gram matrix; diagnostics keep the raw sum
    even when ``renormalized``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    dt: float
    raw_weight_sum: float
    eta: float
    shift: float
    renormalized: bool = False

    @property
    def dim(self) -> int:
        return len(self.nodes)

    def energies(self) -> np.ndarray:
        """Node energies E_k = -arg(node_k)/dt."""
        return -node_phase(self.nodes) / self.dt

    def to_json_dict(self) -> dict:
        return {
            "d": self.dim,
            "dt": self.dt,
            "nodes": [{"re": float(z.real), "im": float(z.imag)} for z in self.nodes],
            "weights": [float(w) for w in self.weights],
            "diagnostics": {
                "raw_weight_sum": self.raw_weight_sum,
                "eta": self.eta,
                "shift": self.shift,
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SzegoRule":
        diag = data["diagnostics"]
        return cls(
            nodes=np.array([p["re"] + 1j * p["im"] for p in data["nodes"]]),
            weights=np.array(data["weights"], dtype=float),
            dt=float(data["dt"]),
            raw_weight_sum=float(diag["raw_weight_sum"]),
            eta=float(diag["eta"]),
            shift=float(diag["shift"]),
        )


def _eval_at(f, nodes: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(f(nodes))
    except (TypeError, ValueError):  # scalar-only callable
        return np.array([f(z) for z in nodes])
    if out.shape != nodes.shape:
        out = np.array([f(z) for z in nodes])
    return out


def build_rule(m: MomentSequence, d: int, eta: float | None = None,
               renormalize: bool = False, merge_degenerate: bool = False,
               merge_tol: float = 1e-8) -> SzegoRule:
    """Szego rule of degree d from a moment sequence.

    eta defaults to max(1e-12, 2 sigma sqrt(2d)) using the sequence's
    recorded noise width.  Weights within a degenerate node cluster are
    basis-dependent; pass ``merge_degenerate`` to report the (invariant)
    summed weight on a single merged node.
    """
    if eta is None:
        eta = default_eta(d, m.noise_sigma)
    pair = assemble(m, d)
    u_tilde, reg = stable_unitary(pair, eta)
    eig = unitary_eigendecompose(u_tilde)
    s_half = psd_power(reg.s_tilde, 0.5, floor=reg.eta)
    amps = (s_half @ eig.eigenvectors)[0, :]
    weights = np.abs(amps) ** 2
    nodes = eig.eigenvalues  # already phase-sorted

    raw_sum = float(weights.sum())
    rule = SzegoRule(nodes=nodes, weights=weights, dt=m.dt,
                     raw_weight_sum=raw_sum, eta=float(eta), shift=reg.shift)
    if merge_degenerate:
        rule = merge_degenerate_nodes(rule, tol=merge_tol)
    if renormalize:
        rule = replace(rule, weights=rule.weights / raw_sum, renormalized=True)
    return rule


def merge_degenerate_nodes(rule: SzegoRule, tol: float = 1e-8) -> SzegoRule:
    """Collapse node clusters closer than ``tol``, summing their weights.

    The merged node is the weight-averaged cluster node renormalized to the
    unit circle.  Clusters wrapping across the phase branch at -pi are
    handled by one wrap-around merge pass.
    """
    nodes, weights = rule.nodes, rule.weights
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(nodes)):
        if abs(nodes[i] - nodes[clusters[-1][-1]]) < tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    if len(clusters) > 1 and abs(nodes[clusters[0][0]] - nodes[clusters[-1][-1]]) < tol:
        clusters[0] = clusters.pop() + clusters[0]
    new_nodes, new_weights = [], []
    for idx in clusters:
        w = weights[idx].sum()
        z = (weights[idx] @ nodes[idx]) / w if w > 0 else nodes[idx].mean()
        new_nodes.append(z / abs(z))
        new_weights.append(w)
    nodes = np.array(new_nodes)
    weights = np.array(new_weights)
    order = np.argsort(node_phase(nodes), kind="stable")
    return replace(rule, nodes=nodes[order], weights=weights[order])


def apply_rule(rule: SzegoRule, f) -> complex:
    """The weighted sum R(f) = sum_k w_k f(node_k)."""
    vals = _eval_at(f, rule.nodes)
    if not np.all(np.isfinite(vals)):
        raise ValueError("f is undefined (non-finite) at a quadrature node")
    return complex(np.sum(rule.weights * vals))


def matrix_function_element(u_tilde, s_tilde, f, floor: float = 1e-12) -> complex:
    """[S~^{1/2} f(U~) S~^{1/2}]_{00} via the eigendecomposition of U~.

    Algebraically identical to applying the rule built from the same
    pipeline; kept as an independent evaluation path.
    """
    eig = unitary_eigendecompose(np.asarray(u_tilde, dtype=complex))
    vals = _eval_at(f, eig.eigenvalues)
    v = eig.eigenvectors
    mf = (v * vals) @ v.conj().T
    s_half = psd_power(s_tilde, 0.5, floor=floor)
    return complex((s_half @ mf @ s_half)[0, 0])


COMBO_PHASES = (1, -1, 1j, -1j)


def build_general_rules(spec: SpectralData, psi0: np.ndarray, psi1: np.ndarray,
                        d: int, eta: float | None = None):
    """Rules for the four combination states psi0 + phase*psi1, plus norms.

    A zero-norm combination (psi1 parallel to psi0 up to the phase) yields
    (None, 0.0) for that slot; its contribution to the general matrix
    element is zero.
    """
    rules, norms = [], []
    for phase in COMBO_PHASES:
        v = psi0 + phase * psi1
        norm = float(np.linalg.norm(v))
        if norm < 1e-9:
            rules.append(None)
            norms.append(0.0)
            continue
        m = moments(spec, v / norm, d)
        rules.append(build_rule(m, d, eta=eta))
        norms.append(norm)
    return rules, norms


def general_matrix_element(rules, norms, f) -> complex:
    """<psi1|f(U)|psi0> = (a - b + i(c - d))/2 from the four combo rules.

    Each of a, b, c, d is the rule value for the normalized combination
    state rescaled by norm^2/2, which reinstates the (psi0 +- psi1)/sqrt(2)
    convention whatever the actual combination norms were.
    """
    if len(rules) != 4 or len(norms) != 4:
        raise ValueError("expected four rules and four norms (+1, -1, +i, -i)")
    vals = []
    for rule, norm in zip(rules, norms):
        if norm == 0.0 or rule is None:
            vals.append(0j)
        else:
            vals.append(apply_rule(rule, f) * norm**2 / 2.0)
    a, b, c, d = vals
    return (a - b + 1j * (c - d)) / 2.0

"""Deterministic experiment datasets (error-vs-dimension sweeps, noise
studies, Green's function curves) written as CSV with a JSON config sidecar.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .baselines import (estimate_from_moments, fixed_laurent_bound,
                        fourier_coefficients, optimal_laurent)
from .functions import Gibbs, Greens, Monomial, node_phase, node_to_energy, random_laurent
from .model import SpectralData, build_heisenberg, spectral_decompose
from .moments import NoiseModel, apply_noise, exact_functional, moments, prepare_state
from .rule import SzegoRule, apply_rule, build_rule

log = logging.getLogger(__name__)

EXPERIMENT_NAMES = ("laurent-exactness", "noisy-monomial", "gibbs-sweep",
                    "gibbs-compare", "greens-curve", "greens-l1")

CSV_HEADERS = {
    "laurent-exactness": ["degree", "dim", "trial", "rel_error"],
    "noisy-monomial": ["sigma", "dim", "trial", "rel_error"],
    "gibbs-sweep": ["beta", "dim", "rel_error"],
    "gibbs-compare": ["dim", "method", "rel_error"],
    "greens-curve": ["omega", "re_exact", "im_exact", "re_approx", "im_approx"],
    "greens-l1": ["dim", "l1_error"],
}


class ConfigError(ValueError):
    """Invalid or unknown experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    rows: int = 2
    cols: int = 3
    h: float = 1.0
    j1: float = 1.0
    j2: float = 1.0
    j3: float = 2.0
    dt: float | None = None
    state: str = "antiferromagnet"
    dims: tuple[int, ...] = tuple(range(1, 13))
    degrees: tuple[int, ...] = (1, 2, 4, 6)
    eta: float | None = None
    sigmas: tuple[float, ...] = (1e-8, 1e-6, 1e-4)
    seed: int = 0
    trials: int = 10
    betas: tuple[float, ...] = (0.5, 1.0)
    beta: float = 1.0
    chi: float = 0.1
    omega_min: float | None = None
    omega_max: float | None = None
    omega_points: int = 2001
    dim: int = 10
    monomial_power: int = 5

    def with_overrides(self, **kwargs) -> "ExperimentConfig":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


_INT_KEYS = {"rows", "cols", "seed", "trials", "omega_points", "dim", "monomial_power"}
_INT_LIST_KEYS = {"dims", "degrees"}
_FLOAT_LIST_KEYS = {"sigmas", "betas"}
_FLOAT_KEYS = {"h", "j1", "j2", "j3", "dt", "eta", "beta", "chi", "omega_min", "omega_max"}
_STR_KEYS = {"state"}


def parse_config_file(path) -> ExperimentConfig:
    """Plain-text key=value config, one per line, '#' comments."""
    values: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        try:
            if key in _INT_KEYS:
                values[key] = int(val)
            elif key in _FLOAT_KEYS:
                values[key] = float(val)
            elif key in _INT_LIST_KEYS:
                values[key] = tuple(int(x) for x in val.split(",") if x.strip())
            elif key in _FLOAT_LIST_KEYS:
                values[key] = tuple(float(x) for x in val.split(",") if x.strip())
            elif key in _STR_KEYS:
                values[key] = val
            else:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return ExperimentConfig(**values)


@dataclass
class ModelContext:
    """Everything derived once per config: spectrum, state, moments."""

    spec: SpectralData
    psi0: np.ndarray
    config: ExperimentConfig
    _moments_cache: dict = field(default_factory=dict)

    def moments(self, d: int):
        if d not in self._moments_cache:
            self._moments_cache[d] = moments(self.spec, self.psi0, d)
        return self._moments_cache[d]


def build_context(config: ExperimentConfig) -> ModelContext:
    try:
        ham = build_heisenberg(config.rows, config.cols, config.h,
                               config.j1, config.j2, config.j3)
        spec = spectral_decompose(ham, dt=config.dt)
        psi0 = prepare_state(config.state, ham.n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return ModelContext(spec=spec, psi0=psi0, config=config)


def _warn_branch_cut(rule: SzegoRule):
    ph = node_phase(rule.nodes)
    if np.any(np.abs(ph + math.pi) < 1e-6):
        log.warning("quadrature node within 1e-6 of arg = -pi; "
                    "the reconstructed energy aliases across the branch cut")


def _rel_error(approx: complex, exact: complex) -> float:
    return abs(approx - exact) / abs(exact)


# ---------------------------------------------------------------------------
# individual experiments; each returns a list of rows matching CSV_HEADERS

def _laurent_exactness(ctx: ModelContext):
    cfg = ctx.config
    max_dim = max(cfg.dims)
    m = ctx.moments(max_dim)
    rows = []
    for degree in cfg.degrees:
        for dim in cfg.dims:
            rule = build_rule(m, dim, eta=cfg.eta)
            _warn_branch_cut(rule)
            for trial in range(cfg.trials):
                f = random_laurent(degree, cfg.seed + trial)
                exact = exact_functional(ctx.spec, ctx.psi0, ctx.psi0, f)
                rows.append([degree, dim, trial, _rel_error(apply_rule(rule, f), exact)])
    return rows


def _noisy_monomial(ctx: ModelContext):
    cfg = ctx.config
    f = Monomial(cfg.monomial_power)
    max_dim = max(cfg.dims)
    m = ctx.moments(max_dim)
    exact = exact_functional(ctx.spec, ctx.psi0, ctx.psi0, f)
    rows = []
    for sigma in cfg.sigmas:
        for dim in cfg.dims:
            for trial in range(cfg.trials):
                noisy = apply_noise(m, NoiseModel(sigma=sigma, seed=cfg.seed + trial))
                rule = build_rule(noisy, dim, eta=cfg.eta)
                rows.append([sigma, dim, trial, _rel_error(apply_rule(rule, f), exact)])
    return rows


def _gibbs_sweep(ctx: ModelContext):
    cfg = ctx.config
    m = ctx.moments(max(cfg.dims))
    rows = []
    for beta in cfg.betas:
        f = Gibbs(beta=beta, dt=ctx.spec.dt)
        exact = exact_functional(ctx.spec, ctx.psi0, ctx.psi0, f)
        for dim in cfg.dims:
            rule = build_rule(m, dim, eta=cfg.eta)
            rows.append([beta, dim, _rel_error(apply_rule(rule, f), exact)])
    return rows


def _gibbs_compare(ctx: ModelContext):
    cfg = ctx.config
    beta = cfg.beta
    f = Gibbs(beta=beta, dt=ctx.spec.dt)
    exact = exact_functional(ctx.spec, ctx.psi0, ctx.psi0, f)
    m = ctx.moments(max(cfg.dims))
    rows = []
    for dim in cfg.dims:
        rule = build_rule(m, dim, eta=cfg.eta)
        rows.append([dim, "qsq", _rel_error(apply_rule(rule, f), exact)])
        fourier = fourier_coefficients(beta, ctx.spec.dt, dim)
        rows.append([dim, "fourier", _rel_error(estimate_from_moments(m, fourier), exact)])
        bound, _ = fixed_laurent_bound(beta, ctx.spec.h_norm, dim, relative=True)
        rows.append([dim, "fixed_bound", bound])
        opt = optimal_laurent(ctx.spec, f, dim)
        rows.append([dim, "optimal_laurent", _rel_error(estimate_from_moments(m, opt), exact)])
    return rows


def _omega_grid(ctx: ModelContext) -> np.ndarray:
    cfg = ctx.config
    if cfg.omega_min is not None and cfg.omega_max is not None:
        lo, hi = cfg.omega_min, cfg.omega_max
    else:
        # cover the node-convention energies of the supported spectrum
        probs = np.abs(ctx.spec.eigenvectors.conj().T @ ctx.psi0) ** 2
        energies = node_to_energy(ctx.spec.eigenphases(), ctx.spec.dt)
        sig = energies[probs > 1e-12]
        lo = cfg.omega_min if cfg.omega_min is not None else float(sig.min()) - 2.0
        hi = cfg.omega_max if cfg.omega_max is not None else float(sig.max()) + 2.0
    return np.linspace(lo, hi, cfg.omega_points)


def _greens_on_grid(energies: np.ndarray, weights: np.ndarray,
                    omegas: np.ndarray, chi: float) -> np.ndarray:
    return weights @ (1.0 / (energies[:, None] - omegas[None, :] - 1j * chi))


def _greens_exact_curve(ctx: ModelContext, omegas: np.ndarray) -> np.ndarray:
    probs = np.abs(ctx.spec.eigenvectors.conj().T @ ctx.psi0) ** 2
    energies = node_to_energy(ctx.spec.eigenphases(), ctx.spec.dt)
    return _greens_on_grid(energies, probs, omegas, ctx.config.chi)


def _greens_curve(ctx: ModelContext):
    cfg = ctx.config
    omegas = _omega_grid(ctx)
    exact = _greens_exact_curve(ctx, omegas)
    rule = build_rule(ctx.moments(cfg.dim), cfg.dim, eta=cfg.eta)
    _warn_branch_cut(rule)
    approx = _greens_on_grid(rule.energies(), rule.weights, omegas, cfg.chi)
    return [[w, ge.real, ge.imag, ga.real, ga.imag]
            for w, ge, ga in zip(omegas, exact, approx)]


def _greens_l1(ctx: ModelContext):
    cfg = ctx.config
    omegas = _omega_grid(ctx)
    exact = _greens_exact_curve(ctx, omegas)
    m = ctx.moments(max(cfg.dims))
    rows = []
    for dim in cfg.dims:
        rule = build_rule(m, dim, eta=cfg.eta)
        approx = _greens_on_grid(rule.energies(), rule.weights, omegas, cfg.chi)
        l1 = float(np.trapezoid(np.abs(approx - exact), omegas))
        rows.append([dim, l1])
    return rows


_RUNNERS = {
    "laurent-exactness": _laurent_exactness,
    "noisy-monomial": _noisy_monomial,
    "gibbs-sweep": _gibbs_sweep,
    "gibbs-compare": _gibbs_compare,
    "greens-curve": _greens_curve,
    "greens-l1": _greens_l1,
}


def _format_cell(x) -> str:
    # repr of a builtin float is shortest-round-trip; numpy scalars are
    # converted first so their repr wrapper never leaks into the CSV
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


def run_experiment(name: str, config: ExperimentConfig, out_dir) -> Path:
    """Run one named experiment; writes <name>.csv plus a config sidecar.

    Output is deterministic: identical config and seed give byte-identical
    files.  Returns the CSV path.
    """
    if name not in _RUNNERS:
        raise ConfigError(f"unknown experiment {name!r}; choose from {EXPERIMENT_NAMES}")
    ctx = build_context(config)
    rows = _RUNNERS[name](ctx)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{name}.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADERS[name])
        for row in rows:
            writer.writerow([_format_cell(x) for x in row])

    sidecar = {
        "experiment": name,
        "config": asdict(config),
        "resolved": {
            "dt": ctx.spec.dt,
            "h_norm": ctx.spec.h_norm,
            "eta": config.eta if config.eta is not None else "per-rule default",
            "n_qubits": ctx.config.rows * ctx.config.cols,
        },
    }
    with open(out_dir / f"{name}.config.json", "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path

"""Turn experiment CSVs into convergence and spectral-function figures.

Each figure kind matches one experiment dataset.  Error-vs-dimension
sweeps are drawn log-linear, method comparisons and l1 convergence
log-log, and the Green's function as a two-panel real/imaginary overlay.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402 - backend must be set first
import numpy as np  # noqa: E402

EXPECTED_HEADERS = {
    "laurent-exactness": ["degree", "dim", "trial", "rel_error"],
    "noisy-monomial": ["sigma", "dim", "trial", "rel_error"],
    "gibbs-sweep": ["beta", "dim", "rel_error"],
    "gibbs-compare": ["dim", "method", "rel_error"],
    "greens-curve": ["omega", "re_exact", "im_exact", "re_approx", "im_approx"],
    "greens-l1": ["dim", "l1_error"],
}

FIGURE_KINDS = tuple(EXPECTED_HEADERS)


class SchemaError(ValueError):
    """CSV header does not match the experiment schema."""


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[Path, ...]
    output: Path

    def __post_init__(self):
        if self.kind not in EXPECTED_HEADERS:
            raise ValueError(f"unknown figure kind {self.kind!r}; "
                             f"choose from {FIGURE_KINDS}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


@dataclass
class Table:
    """One parsed CSV: columns by name, numeric where possible."""

    path: Path
    columns: dict = field(default_factory=dict)

    def __len__(self):
        return len(next(iter(self.columns.values()), []))

    def numeric(self, name: str) -> np.ndarray:
        return np.array([float(x) for x in self.columns[name]])

    def strings(self, name: str) -> list[str]:
        return self.columns[name]


def load_table(path: Path, kind: str) -> Table:
    """Read and schema-check one CSV.  Raises SchemaError naming the first
    offending column on a header mismatch."""
    expected = EXPECTED_HEADERS[kind]
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header "
                              f"{','.join(expected)}") from None
        for i, want in enumerate(expected):
            got = header[i] if i < len(header) else "<missing>"
            if got != want:
                raise SchemaError(f"{path}: column {i + 1} is {got!r}, "
                                  f"expected {want!r}")
        if len(header) > len(expected):
            raise SchemaError(f"{path}: unexpected extra column "
                              f"{header[len(expected)]!r}")
        rows = [row for row in reader if row]
    cols = {name: [row[i] for row in rows] for i, name in enumerate(expected)}
    return Table(path=path, columns=cols)


def _group_series(table: Table, key: str, x: str, y: str, reduce=np.mean):
    """(label, dims, errors) per distinct key value, reduced over repeats."""
    if len(table) == 0:
        return []
    keys = table.strings(key)
    xs = table.numeric(x)
    ys = table.numeric(y)
    series = []
    for k in sorted(set(keys), key=lambda s: (len(s), s)):
        mask = np.array([kk == k for kk in keys])
        xv = np.unique(xs[mask])
        yv = np.array([reduce(ys[mask & (xs == v)]) for v in xv])
        series.append((k, xv, yv))
    return series


def _error_sweep(ax, tables, key, label_fmt, reduce=np.mean):
    for t in tables:
        prefix = f"{t.path.stem}: " if len(tables) > 1 else ""
        for k, xv, yv in _group_series(t, key, "dim", "rel_error", reduce):
            ax.plot(xv, yv, marker="o", label=prefix + label_fmt.format(k))
    ax.set_xlabel("Krylov dimension d")
    ax.set_yscale("log")


def _render_laurent_exactness(tables, fig):
    ax = fig.subplots()
    _error_sweep(ax, tables, "degree", "degree {}")
    ax.set_ylabel("mean relative error")
    ax.set_title("Laurent polynomial exactness")
    if ax.lines:
        ax.legend()


def _render_noisy_monomial(tables, fig):
    ax = fig.subplots()
    _error_sweep(ax, tables, "sigma", "sigma = {}", reduce=np.median)
    ax.set_ylabel("median relative error")
    ax.set_title("Monomial estimate under moment noise")
    if ax.lines:
        ax.legend()


def _render_gibbs_sweep(tables, fig):
    ax = fig.subplots()
    dims_seen = []
    for t in tables:
        prefix = f"{t.path.stem}: " if len(tables) > 1 else ""
        for k, xv, yv in _group_series(t, "beta", "dim", "rel_error"):
            ax.plot(xv, yv, marker="o", label=prefix + f"beta = {k}")
            dims_seen.extend(xv)
    if dims_seen:
        d = np.linspace(min(dims_seen), max(dims_seen), 100)
        d0 = d[0]
    else:
        d = np.linspace(1.0, 12.0, 100)
        d0 = 1.0
    ax.plot(d, np.exp(-(d - d0)), "k--", linewidth=1, label="exp(-d)")
    ax.plot(d, np.exp(-2.0 * (d - d0)), "k--", linewidth=0.5, label="exp(-2d)")
    ax.set_xlabel("Krylov dimension d")
    ax.set_ylabel("relative error")
    ax.set_yscale("log")
    ax.set_title("Gibbs factor convergence")
    ax.legend()


def _render_gibbs_compare(tables, fig):
    ax = fig.subplots()
    for t in tables:
        prefix = f"{t.path.stem}: " if len(tables) > 1 else ""
        for k, xv, yv in _group_series(t, "method", "dim", "rel_error"):
            ax.plot(xv, yv, marker="o", label=prefix + k)
    ax.set_xlabel("Krylov dimension d")
    ax.set_ylabel("relative error")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_title("Gibbs estimate: method comparison")
    if ax.lines:
        ax.legend()


def _render_greens_curve(tables, fig):
    ax_re, ax_im = fig.subplots(2, 1, sharex=True)
    for t in tables:
        if len(t) == 0:
            continue
        prefix = f"{t.path.stem}: " if len(tables) > 1 else ""
        omega = t.numeric("omega")
        ax_re.plot(omega, t.numeric("re_exact"), label=prefix + "exact")
        ax_re.plot(omega, t.numeric("re_approx"), "--", label=prefix + "approx")
        ax_im.plot(omega, t.numeric("im_exact"), label=prefix + "exact")
        ax_im.plot(omega, t.numeric("im_approx"), "--", label=prefix + "approx")
    ax_re.set_ylabel("Re G(omega)")
    ax_im.set_ylabel("Im G(omega)")
    ax_im.set_xlabel("omega")
    ax_re.set_title("Retarded Green's function")
    if ax_re.lines:
        ax_re.legend()


def _render_greens_l1(tables, fig):
    ax = fig.subplots()
    for t in tables:
        if len(t) == 0:
            continue
        label = t.path.stem if len(tables) > 1 else "l1 error"
        ax.plot(t.numeric("dim"), t.numeric("l1_error"), marker="o", label=label)
    ax.set_xlabel("Krylov dimension d")
    ax.set_ylabel("l1 error")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_title("Green's function l1 convergence")
    if ax.lines:
        ax.legend()


_RENDERERS = {
    "laurent-exactness": _render_laurent_exactness,
    "noisy-monomial": _render_noisy_monomial,
    "gibbs-sweep": _render_gibbs_sweep,
    "gibbs-compare": _render_gibbs_compare,
    "greens-curve": _render_greens_curve,
    "greens-l1": _render_greens_l1,
}


def render(spec: FigureSpec):
    """Render one figure; returns the matplotlib Figure after saving it.

    An empty (header-only) CSV renders empty axes and still succeeds.
    """
    tables = [load_table(p, spec.kind) for p in spec.inputs]
    fig = plt.figure(figsize=(7, 5))
    try:
        _RENDERERS[spec.kind](tables, fig)
        fig.tight_layout()
        spec.output.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.output)
    finally:
        plt.close(fig)
    return fig

"""Command-line surface: model/moments/rule/evaluate subcommands plus the
named experiment runner.

Exit codes: 0 success, 2 configuration/usage error, 1 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .experiments import (EXPERIMENT_NAMES, ConfigError, ExperimentConfig,
                          build_context, parse_config_file, run_experiment)
from .functions import parse_function
from .moments import NoiseModel, apply_noise, exact_functional
from .rule import apply_rule, build_rule


def _load_config(args) -> ExperimentConfig:
    cfg = parse_config_file(args.config) if args.config else ExperimentConfig()
    if getattr(args, "seed", None) is not None:
        cfg = cfg.with_overrides(seed=args.seed)
    return cfg


def _emit(args, payload: dict, stem: str):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{stem}.json").write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_model(args) -> int:
    cfg = _load_config(args)
    ctx = build_context(cfg)
    payload = {
        "rows": cfg.rows,
        "cols": cfg.cols,
        "n_qubits": cfg.rows * cfg.cols,
        "term_count": cfg.rows * cfg.cols + 3 * (cfg.rows * (cfg.cols - 1)
                                                 + cfg.cols * (cfg.rows - 1)),
        "h_norm": ctx.spec.h_norm,
        "dt": ctx.spec.dt,
    }
    _emit(args, payload, "model")
    return 0


def _moments_for(args, ctx):
    m = ctx.moments(args.dim)
    sigma = getattr(args, "noise_sigma", None)
    if sigma:
        m = apply_noise(m, NoiseModel(sigma=sigma, seed=ctx.config.seed))
    return m


def _cmd_moments(args) -> int:
    ctx = build_context(_load_config(args))
    m = _moments_for(args, ctx)
    if args.format == "csv":
        lines = ["j,re,im"] + [f"{j},{x.real!r},{x.imag!r}" for j, x in enumerate(m.values)]
        text = "\n".join(lines) + "\n"
        if args.out:
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / "moments.csv").write_text(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(args, m.to_json_dict(), "moments")
    return 0


def _cmd_rule(args) -> int:
    ctx = build_context(_load_config(args))
    m = _moments_for(args, ctx)
    rule = build_rule(m, args.dim, eta=args.eta, renormalize=args.renormalize,
                      merge_degenerate=args.merge_degenerate)
    _emit(args, rule.to_json_dict(), "rule")
    return 0


def _cmd_evaluate(args) -> int:
    ctx = build_context(_load_config(args))
    f = parse_function(args.function, dt=ctx.spec.dt)
    m = _moments_for(args, ctx)
    rule = build_rule(m, args.dim, eta=args.eta)
    value = apply_rule(rule, f)
    exact = exact_functional(ctx.spec, ctx.psi0, ctx.psi0, f)
    payload = {
        "dim": args.dim,
        "function": args.function,
        "value": {"re": value.real, "im": value.imag},
        "exact": {"re": exact.real, "im": exact.imag},
        "rel_error": abs(value - exact) / abs(exact) if exact != 0 else float(np.abs(value)),
    }
    _emit(args, payload, "evaluate")
    return 0


def _cmd_experiment(args) -> int:
    cfg = _load_config(args)
    path = run_experiment(args.name, cfg, args.out or "out")
    sys.stdout.write(f"{path}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--seed", type=int, default=None, help="override the config seed")
    common.add_argument("--out", help="output directory (default: stdout for JSON)")
    common.add_argument("--format", choices=["csv", "json"], default="json")

    parser = argparse.ArgumentParser(prog="szegoq",
                                     description="Szego quadrature from unitary moment data")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", parents=[common], help="summarize the configured model")
    p.set_defaults(func=_cmd_model)

    p = sub.add_parser("moments", parents=[common], help="compute the moment sequence")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--noise-sigma", type=float, default=None)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("rule", parents=[common], help="build a Szego quadrature rule")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--noise-sigma", type=float, default=None)
    p.add_argument("--renormalize", action="store_true")
    p.add_argument("--merge-degenerate", action="store_true")
    p.set_defaults(func=_cmd_rule)

    p = sub.add_parser("evaluate", parents=[common],
                       help="apply a rule to a function and compare to the oracle")
    p.add_argument("--function", required=True,
                   help="laurent:file.json | monomial:5 | gibbs:beta=1 | greens:omega=0,chi=0.1")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--noise-sigma", type=float, default=None)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("experiment", parents=[common], help="run a named experiment")
    p.add_argument("name", choices=EXPERIMENT_NAMES)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"szegoq: config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"szegoq: numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

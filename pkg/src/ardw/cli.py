"""Batch command-line surface.

Subcommands: limits, simulate, fit, test, power, diagnose. Structured
output is JSON (17 significant digits); series and tables are CSV.
Exit codes: 0 success, 2 usage error, 3 numerical/degeneracy error (with a
machine-readable JSON payload on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import ArdwError
from .estimators import fit, read_series
from .limit_theory import ModelParams, limit_summary
from .montecarlo import (
    StudyConfig,
    clt_diagnostic,
    rate_diagnostic,
    size_power_study,
)
from .serial_tests import TEST_NAMES, outcomes_to_csv, run_tests
from .simulate import NoiseSpec, simulate


def _parse_theta(text: str) -> np.ndarray:
    return np.array([float(t) for t in text.split(",") if t.strip() != ""])


def _params_from_args(args) -> ModelParams:
    theta = _parse_theta(args.theta)
    return ModelParams(
        p=len(theta), theta=theta, rho=args.rho,
        sigma2=getattr(args, "sigma2", 1.0),
    )


def _default_seed() -> int:
    return int(os.environ.get("ARDW_SEED", "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ardw",
        description="Durbin-Watson asymptotics for stable AR(p) processes "
        "with AR(1)-correlated noise",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_lim = sub.add_parser("limits", help="print all closed-form limits as JSON")
    p_lim.add_argument("--p", type=int, default=None, help="model order (inferred from theta)")
    p_lim.add_argument("--theta", required=True, help="comma-separated coefficients")
    p_lim.add_argument("--rho", type=float, required=True)

    p_sim = sub.add_parser("simulate", help="write a trajectory CSV + JSON sidecar")
    p_sim.add_argument("--theta", required=True)
    p_sim.add_argument("--rho", type=float, required=True)
    p_sim.add_argument("--sigma2", type=float, default=1.0)
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--burn-in", type=int, default=0)
    p_sim.add_argument("--noise", default="gaussian",
                       choices=["gaussian", "uniform", "student_t", "rademacher"])
    p_sim.add_argument("--df", type=float, default=5.0)
    p_sim.add_argument("--output", required=True)

    p_fit = sub.add_parser("fit", help="fit a series and print the result as JSON")
    p_fit.add_argument("--input", required=True)
    p_fit.add_argument("--p", type=int, required=True)

    p_test = sub.add_parser("test", help="run serial-correlation tests on a series")
    p_test.add_argument("--input", required=True)
    p_test.add_argument("--p", type=int, required=True)
    p_test.add_argument("--level", type=float, default=0.05)
    p_test.add_argument("--tests", default="all")
    p_test.add_argument("--format", default="json", choices=["json", "csv"])
    p_test.add_argument("--output", default=None)

    p_pow = sub.add_parser("power", help="run a size/power study from a config file")
    p_pow.add_argument("--config", required=True)
    p_pow.add_argument("--output", required=True)
    p_pow.add_argument("--format", default="csv", choices=["csv", "json"])
    p_pow.add_argument("--workers", type=int, default=1)

    p_diag = sub.add_parser("diagnose", help="CLT or rate diagnostics")
    p_diag.add_argument("--kind", required=True, choices=["clt", "rate"])
    p_diag.add_argument("--theta", required=True)
    p_diag.add_argument("--rho", type=float, required=True)
    p_diag.add_argument("--n", type=int, required=True)
    p_diag.add_argument("--reps", type=int, default=1000)
    p_diag.add_argument("--seed", type=int, default=None)
    p_diag.add_argument("--output", default=None)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        if args.command == "limits":
            params = _params_from_args(args)
            if args.p is not None and args.p != params.p:
                print(json.dumps({"error": "p does not match theta length"}),
                      file=sys.stderr)
                return 2
            print(json.dumps(limit_summary(params).to_dict(), indent=2))

        elif args.command == "simulate":
            params = _params_from_args(args)
            seed = args.seed if args.seed is not None else _default_seed()
            noise = NoiseSpec(family=args.noise, sigma2=args.sigma2, df=args.df)
            traj = simulate(params, args.n, noise=noise, seed=seed,
                            burn_in=args.burn_in)
            traj.to_csv(args.output)

        elif args.command == "fit":
            x = read_series(args.input)
            print(fit(x, args.p).to_json())

        elif args.command == "test":
            x = read_series(args.input)
            names = TEST_NAMES if args.tests == "all" else tuple(args.tests.split(","))
            outcomes = run_tests(x, fit(x, args.p), level=args.level, names=names)
            if args.format == "csv":
                if args.output is None:
                    print(json.dumps({"error": "--output required for csv"}),
                          file=sys.stderr)
                    return 2
                outcomes_to_csv(outcomes, args.output)
            else:
                for o in outcomes:
                    print(o.to_json())

        elif args.command == "power":
            config = StudyConfig.from_json(args.config)
            table = size_power_study(config, workers=args.workers)
            if args.format == "csv":
                table.to_csv(args.output)
            else:
                table.to_json(args.output)

        elif args.command == "diagnose":
            params = _params_from_args(args)
            seed = args.seed if args.seed is not None else _default_seed()
            if args.kind == "clt":
                report = clt_diagnostic(params, args.n, args.reps, seed=seed)
            else:
                report = rate_diagnostic(params, args.n, seed=seed)
            text = json.dumps(report, indent=2)
            if args.output:
                with open(args.output, "w") as f:
                    f.write(text)
            else:
                print(text)

    except ArdwError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 3
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line scenario runner.

One subcommand per verification scenario; flags override config-file keys,
which override the embedded defaults.  Reports go to stdout as a short
summary and, with ``--out``, to a CSV or JSON-lines file.

Exit codes: 0 every check passed, 1 at least one check failed,
2 inconclusive checks but no failures.
"""

from __future__ import annotations

import argparse
import json
import sys

from .report import VerificationReport, emit_report
from .scenarios import ConfigError, ScenarioConfig, run_scenario, scenario_descriptions


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file; flags override its keys")
    sub.add_argument("--out", dest="output", help="report output path")
    sub.add_argument("--format", choices=("jsonl", "csv"), help="report format")
    sub.add_argument("--d", type=int, help="ambient dimension")
    sub.add_argument("--gamma", type=float, help="homogeneity index (radial-only model)")
    sub.add_argument("--k", help="comma-separated multiplicities, e.g. '1.0' or '1,0.5'")
    sub.add_argument("--p", type=float)
    sub.add_argument("--q", type=float)
    sub.add_argument("--beta", type=float)
    sub.add_argument("--profile", help="profile, e.g. gaussian:1.0, exp:1, indicator:1,2")
    sub.add_argument("--g", dest="g", help="shell weight: const or power:a")
    sub.add_argument("--phi", help="averaging weight: const, power:a, poly:c0,c1,...")
    sub.add_argument("--bump", choices=("gaussian", "ring"))
    sub.add_argument("--s-max", dest="s_max", type=float)
    sub.add_argument("--j-min", dest="j_min", type=int)
    sub.add_argument("--j-max", dest="j_max", type=int)
    sub.add_argument("--eps-grid", dest="eps_grid", help="comma-separated probe epsilons")
    sub.add_argument("--theta", dest="theta_list", help="comma-separated class indices")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--samples", type=int)
    sub.add_argument("--rel-tol", dest="rel_tol", type=float)
    sub.add_argument("--abs-tol", dest="abs_tol", type=float)
    sub.add_argument("--max-panels", dest="max_panels", type=int)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunkl-verify",
        description="Run named verification scenarios for the radial Dunkl library.",
    )
    parser.add_argument("--list", action="store_true", help="list scenarios and exit")
    subs = parser.add_subparsers(dest="scenario")
    for name, desc in scenario_descriptions():
        sub = subs.add_parser(name, help=desc, description=desc)
        _add_common(sub)
    return parser


def _model_overrides(args: argparse.Namespace) -> dict | None:
    if args.d is None and args.gamma is None and args.k is None:
        return None
    model: dict = {}
    if args.k is not None:
        ks = [float(v) for v in args.k.split(",")]
        model["d"] = args.d if args.d is not None else len(ks)
        model["k"] = ks
    elif args.gamma is not None:
        if args.d is None:
            raise ConfigError("--gamma needs --d")
        model = {"d": args.d, "gamma": args.gamma}
    else:
        raise ConfigError("--d needs --k or --gamma")
    return model


def build_config(args: argparse.Namespace) -> ScenarioConfig:
    base: dict = {"scenario": args.scenario}
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
        file_cfg.pop("scenario", None)
        base.update(file_cfg)
    cfg = ScenarioConfig.from_dict(base)

    overrides = {
        key: getattr(args, key)
        for key in (
            "p", "q", "beta", "profile", "g", "phi", "bump", "s_max",
            "j_min", "j_max", "seed", "samples", "rel_tol", "abs_tol",
            "max_panels", "output", "format",
        )
        if getattr(args, key, None) is not None
    }
    model = _model_overrides(args)
    if model is not None:
        overrides["model"] = model
    if args.eps_grid is not None:
        overrides["eps_grid"] = tuple(float(v) for v in args.eps_grid.split(","))
    if args.theta_list is not None:
        overrides["theta_list"] = tuple(float(v) for v in args.theta_list.split(","))
    return cfg.merged(overrides)


def _print_summary(report: VerificationReport) -> None:
    print(f"scenario: {report.scenario}")
    for rec in report.records:
        print(
            f"  [{rec.outcome.upper():12s}] {rec.name}: "
            f"lhs={rec.lhs:.6g} rhs={rec.rhs:.6g} ratio={rec.ratio:.6g}"
            + (f"  ({rec.detail})" if rec.detail else "")
        )
    print(
        f"checks: {len(report.records)}, failed: {report.n_failed}, "
        f"inconclusive: {report.n_inconclusive}"
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.list:
        for name, desc in scenario_descriptions():
            print(f"{name:15s} {desc}")
        return 0
    if not args.scenario:
        parser.print_help()
        return 2
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    report = run_scenario(cfg)
    _print_summary(report)
    if cfg.output:
        path = emit_report(report, cfg.output, cfg.format)
        print(f"report written to {path}")
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())

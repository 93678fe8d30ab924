"""Command-line experiment runner.

    relloc list
    relloc show --experiment NAME
    relloc validate [--config PATH] [--experiment NAME] [--resolution-scale N]
    relloc run [--config PATH] [--experiment NAME] [--out DIR] [--resolution-scale N]

Exit codes: 0 success, 1 a check failed, 2 invalid config,
3 numerical-floor violation, 4 box-edge contamination.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import ConfigError, RellocError
from .experiments import EXPERIMENTS, ExperimentConfig, default_config, run_experiment, validate
from .report import build_report, resolve_output_dir, write_outputs


def _load_config(args) -> ExperimentConfig:
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        if args.experiment:
            data["experiment"] = args.experiment
        return ExperimentConfig.from_dict(data)
    if not args.experiment:
        raise ConfigError("give --config PATH or --experiment NAME")
    return default_config(args.experiment)


def _scale(args) -> int:
    if args.resolution_scale < 1:
        raise ConfigError("--resolution-scale must be a positive integer")
    return args.resolution_scale


def cmd_list(args) -> int:
    for name in EXPERIMENTS:
        print(name)
    return 0


def cmd_show(args) -> int:
    print(_load_config(args).to_json())
    return 0


def cmd_validate(args) -> int:
    cfg = _load_config(args)
    warnings = validate(cfg, _scale(args))
    for w in warnings:
        print(f"warning: {w}")
    if not warnings:
        print(f"{cfg.experiment}: ok")
    return 0


def cmd_run(args) -> int:
    cfg = _load_config(args)
    scale = _scale(args)
    warnings = validate(cfg, scale)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    t0 = time.perf_counter()
    result = run_experiment(cfg, scale)
    runtime = time.perf_counter() - t0
    out = resolve_output_dir(cfg, args.out)
    report = build_report(cfg, result, runtime, scale, warnings)
    write_outputs(out, report, result)
    for c in result.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name}: {c.value} {c.op} {c.tolerance}")
    print(f"wrote {out} ({runtime:.1f} s)")
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relloc", description="Localization experiments for free relativistic particles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON experiment config")
        p.add_argument("--experiment", choices=sorted(EXPERIMENTS), help="experiment name (overrides config)")
        p.add_argument("--resolution-scale", type=int, default=1, help="multiply lattice points by N")

    sub.add_parser("list", help="list named experiments").set_defaults(func=cmd_list)
    p = sub.add_parser("show", help="print the effective config as JSON")
    common(p)
    p.set_defaults(func=cmd_show)
    p = sub.add_parser("validate", help="dry-run resolution diagnostics")
    common(p)
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("run", help="run an experiment and write CSV/JSON outputs")
    common(p)
    p.add_argument("--out", help="output directory (default: $RELLOC_OUTPUT_DIR or ./relloc-output)")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RellocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        # parameter combinations the experiment cannot use
        print(f"error: {exc}", file=sys.stderr)
        return ConfigError.exit_code


if __name__ == "__main__":
    sys.exit(main())

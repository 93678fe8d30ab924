"""Deterministic CSV and JSON writers for experiment results."""
from __future__ import annotations

import json
import math
import os
from pathlib import Path

from . import __version__
from .kernels import BACKEND
from .experiments import ExperimentConfig, ExperimentResult, _plain

OUTPUT_ENV = "RELLOC_OUTPUT_DIR"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return "%.17g" % float(v)


def write_csv(path: Path, header, rows):
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_json_safe(v) for v in x]
    return x


def resolve_output_dir(cfg: ExperimentConfig, override: str | None = None) -> Path:
    base = override or cfg.output_dir or os.environ.get(OUTPUT_ENV) or "relloc-output"
    return Path(base) / cfg.experiment


def build_report(cfg: ExperimentConfig, result: ExperimentResult, runtime: float,
                 resolution_scale: int, warnings) -> dict:
    return _json_safe({
        "experiment": cfg.experiment,
        "config": cfg.to_dict(),
        "resolution_scale": resolution_scale,
        "results": _plain(result.scalars),
        "checks": [_plain(c.__dict__) for c in result.checks],
        "passed": result.passed,
        "warnings": list(warnings),
        "runtime_seconds": runtime,
        "version": __version__,
        "backend": BACKEND,
        "tables": sorted(f"{stem}.csv" for stem in result.tables),
    })


def write_outputs(out_dir: Path, report: dict, result: ExperimentResult):
    out_dir.mkdir(parents=True, exist_ok=True)
    for stem, (header, rows) in sorted(result.tables.items()):
        write_csv(out_dir / f"{stem}.csv", header, rows)
    (out_dir / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")

"""Command-line front end: run sweeps, plot curves, summarize reports.

Exit codes: 0 success, 1 configuration error, 2 partial completion.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional

from . import harness, svg
from .datagen import CLASSIFICATION, REGRESSION
from .errors import ConfigError, DdrBenchError
from .models import TASK_OF_KIND

TASK_ALIASES = {"regression": REGRESSION, "classification": CLASSIFICATION}

YLABEL_BY_TASK = {
    REGRESSION: "NMSE-Based Accuracy",
    CLASSIFICATION: "F1 Score",
}

CONFIG_KEYS = (
    "task",
    "models",
    "generator",
    "samples",
    "features",
    "grid",
    "replicates",
    "seed",
    "out",
)


def load_config_file(path: str) -> Dict[str, str]:
    """Parse the optional `key = value` config file ('#' starts a comment)."""
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(
                f"{path}:{lineno}: unknown key {key!r}; valid keys: {', '.join(CONFIG_KEYS)}"
            )
        values[key] = value
    return values


def _resolve(flag, file_values: Dict[str, str], key: str, default, cast):
    if flag is not None:
        return flag
    if key in file_values:
        return cast(file_values[key])
    return default


def cmd_run(args) -> int:
    file_values = load_config_file(args.config) if args.config else {}
    task_name = _resolve(args.task, file_values, "task", None, str)
    if task_name is None:
        raise ConfigError("--task is required (regression or classification)")
    if task_name not in TASK_ALIASES:
        raise ConfigError(
            f"unknown task {task_name!r}; valid tasks: {', '.join(TASK_ALIASES)}"
        )
    task = TASK_ALIASES[task_name]
    out_dir = _resolve(args.out, file_values, "out", None, str)
    if out_dir is None:
        raise ConfigError("--out directory is required")
    grid_points = _resolve(args.grid, file_values, "grid", 21, int)
    config = harness.ExperimentConfig(
        task=task,
        models=harness.resolve_models(
            task, _resolve(args.models, file_values, "models", "all", str)
        ),
        generator=_resolve(args.generator, file_values, "generator", "auto", str),
        n_samples=_resolve(args.samples, file_values, "samples", 1000, int),
        n_features=_resolve(args.features, file_values, "features", 10, int),
        ddr_grid=harness.default_grid(grid_points),
        tuples_per_grid_point=_resolve(args.replicates, file_values, "replicates", 5, int),
        master_seed=_resolve(args.seed, file_values, "seed", 0, int),
        out_dir=out_dir,
    )
    reports = harness.run_experiment(config)
    incomplete = [r.model.kind for r in reports if not r.complete]
    if incomplete:
        print(f"incomplete reports: {', '.join(sorted(incomplete))}", file=sys.stderr)
        return 2
    return 0


def read_curve_csv(path: str) -> Dict[str, List[float]]:
    """Parse a curve CSV; malformed rows are reported with their row number."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].split(",") != [
        "ddr",
        "train_acc_mean",
        "train_acc_std",
        "test_acc_mean",
        "test_acc_std",
        "replicates",
    ]:
        raise ConfigError(f"{path}: row 1: bad or missing curve header")
    curve = {"ddr": [], "train": [], "test": []}
    for row_no, line in enumerate(lines[1:], 2):
        fields = line.split(",")
        if len(fields) != 6:
            raise ConfigError(f"{path}: row {row_no}: expected 6 fields, got {len(fields)}")
        try:
            curve["ddr"].append(float(fields[0]))
            curve["train"].append(float(fields[1]))
            curve["test"].append(float(fields[3]))
        except ValueError as exc:
            raise ConfigError(f"{path}: row {row_no}: {exc}")
    if len(curve["ddr"]) < 2:
        raise ConfigError(f"{path}: need at least two curve rows")
    return curve


def _model_from_filename(path: str) -> Optional[str]:
    stem = Path(path).stem
    kind = stem.split("_", 1)[0].lower()
    return kind if kind in TASK_OF_KIND else None


def cmd_plot(args) -> int:
    series = []
    ylabel = args.ylabel
    for path in args.curves:
        curve = read_curve_csv(path)
        kind = _model_from_filename(path)
        prefix = f"{kind} " if kind and len(args.curves) > 1 else ""
        series.append((f"{prefix}train", curve["ddr"], curve["train"]))
        series.append((f"{prefix}test", curve["ddr"], curve["test"]))
        if ylabel is None and kind is not None:
            ylabel = YLABEL_BY_TASK[TASK_OF_KIND[kind]]
    title = args.title
    if title is None:
        kinds = [k for k in (_model_from_filename(p) for p in args.curves) if k]
        title = f"Accuracy vs. DDR ({', '.join(kinds)})" if kinds else "Accuracy vs. DDR"
    text = svg.line_chart(series, title, "DDR", ylabel or "Accuracy")
    Path(args.out).write_text(text, encoding="utf-8")
    return 0


def cmd_summary(args) -> int:
    if not args.reports:
        raise ConfigError("at least one report JSON is required")
    payloads = []
    for path in args.reports:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        version = payload.get("schema_version")
        if version != harness.SCHEMA_VERSION:
            raise ConfigError(
                f"{path}: schema_version {version!r} != {harness.SCHEMA_VERSION}"
            )
        if payload.get("auc_test") is None:
            print(f"skipping incomplete report {path}", file=sys.stderr)
            continue
        payloads.append(payload)
    if not payloads:
        raise ConfigError("no complete reports to summarize")
    payloads.sort(key=lambda p: p["model"])
    harness.write_summary_csv(payloads, args.out)
    svg_path = args.svg or str(Path(args.out).with_suffix(".svg"))
    text = svg.bar_chart(
        [p["model"] for p in payloads],
        [p["auc_test"] for p in payloads],
        "Model Performance (Normalized AUC)",
        "Normalized AUC",
    )
    Path(svg_path).write_text(text, encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddrbench",
        description="Sweep dataset DDR levels and score model robustness to noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a DDR sweep and write curve/report files")
    run.add_argument("--task", choices=sorted(TASK_ALIASES))
    run.add_argument("--models", help="comma-separated model kinds, or 'all'")
    run.add_argument("--generator", help="dataset generator id, or 'auto'")
    run.add_argument("--samples", type=int, help="samples per dataset (default 1000)")
    run.add_argument("--features", type=int, help="feature columns (default 10)")
    run.add_argument("--grid", type=int, help="number of DDR grid points (default 21)")
    run.add_argument("--replicates", type=int, help="datasets per grid point (default 5)")
    run.add_argument("--seed", type=int, help="master seed (default 0)")
    run.add_argument("--out", help="output directory")
    run.add_argument("--config", help="optional key = value config file; flags win")
    run.set_defaults(func=cmd_run)

    plot = sub.add_parser("plot", help="render curve CSVs as a deterministic SVG")
    plot.add_argument("--curves", nargs="+", required=True)
    plot.add_argument("--out", required=True)
    plot.add_argument("--title")
    plot.add_argument("--ylabel")
    plot.set_defaults(func=cmd_plot)

    summary = sub.add_parser("summary", help="tabulate AUCs across report JSONs")
    summary.add_argument("--reports", nargs="*", default=[])
    summary.add_argument("--out", required=True)
    summary.add_argument("--svg", help="bar chart path (default: table path with .svg)")
    summary.set_defaults(func=cmd_summary)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DdrBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

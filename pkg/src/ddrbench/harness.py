"""Experiment orchestration: DDR grid sweeps, replication, and persistence.

A sweep cell is one (model, grid point, replicate) triple.  Every cell
re-derives its own seeded random sources from the master seed, a stable key
of the grid DDR value, the replicate index, and a stage tag, so cells are
independent, order-insensitive, and safe to run in parallel.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import datagen
from .datagen import CLASSIFICATION, GENERATOR_TASKS, GENERATORS, REGRESSION
from .errors import ConfigError, DdrBenchError
from .evaluation import (
    AccuracyCurve,
    CurvePoint,
    PerformanceReport,
    f1_score,
    nmse_accuracy,
    report_from_curve,
)
from .models import (
    CLASSIFICATION_KINDS,
    MODEL_KINDS,
    REGRESSION_KINDS,
    TASK_OF_KIND,
    ModelSpec,
    fit,
    predict,
)
from .rng import fnv1a64, make_rng, mix_seed
from .sampler import sample_ddr_tuples

SCHEMA_VERSION = 1

THREADS_ENV = "DDRBENCH_THREADS"

# Canonical generator per model kind, mirroring the benchmark pairings.
DEFAULT_GENERATOR: Dict[str, str] = {
    "olsr": "linear",
    "lsvr": "linear",
    "dtr": "friedman1",
    "knnr": "friedman1",
    "blrc": "two_class",
    "dtc": "two_class",
    "knnc": "two_class",
    "lsvc": "two_class",
    "mlpc": "two_class",
}


def default_grid(points: int = 21) -> Tuple[float, ...]:
    """Evenly spaced DDR grid over [0, 1] including both endpoints."""
    if points < 2:
        raise ConfigError("the grid needs at least the two endpoints")
    return tuple(float(v) for v in np.linspace(0.0, 1.0, points))


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep settings; everything is echoed into the persisted reports."""

    task: str
    models: Tuple[str, ...]
    generator: str = "auto"
    n_samples: int = 1000
    n_features: int = 10
    ddr_grid: Tuple[float, ...] = field(default_factory=default_grid)
    tuples_per_grid_point: int = 5
    train_fraction: float = 0.8
    class_sep: float = 2.0
    burn_in: int = 1000
    thinning: int = 10
    master_seed: int = 0
    out_dir: Optional[str] = None

    def __post_init__(self) -> None:
        if self.task not in (REGRESSION, CLASSIFICATION):
            raise ConfigError(
                f"unknown task {self.task!r}; valid tasks: {REGRESSION}, {CLASSIFICATION}"
            )
        models = tuple(str(m).lower() for m in self.models)
        if not models:
            raise ConfigError("at least one model is required")
        for kind in models:
            if kind not in MODEL_KINDS:
                raise ConfigError(
                    f"unknown model {kind!r}; valid models: {', '.join(MODEL_KINDS)}"
                )
            if TASK_OF_KIND[kind] != self.task:
                raise ConfigError(f"model {kind!r} does not belong to task {self.task!r}")
        object.__setattr__(self, "models", models)
        if self.generator != "auto":
            if self.generator not in GENERATORS:
                raise ConfigError(
                    f"unknown generator {self.generator!r}; valid generators: "
                    f"{', '.join(sorted(GENERATORS))}, auto"
                )
            if GENERATOR_TASKS[self.generator] != self.task:
                raise ConfigError(
                    f"generator {self.generator!r} does not produce {self.task!r} data"
                )
        grid = tuple(float(v) for v in self.ddr_grid)
        if len(grid) < 2 or sorted(grid) != list(grid) or len(set(grid)) != len(grid):
            raise ConfigError("ddr grid must be strictly increasing")
        if grid[0] != 0.0 or grid[-1] != 1.0:
            raise ConfigError("ddr grid must start at 0 and end at 1")
        object.__setattr__(self, "ddr_grid", grid)
        if self.tuples_per_grid_point < 1:
            raise ConfigError("tuples_per_grid_point must be >= 1")
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError("train_fraction must lie strictly between 0 and 1")
        if self.n_samples < 4 or self.n_features < 1:
            raise ConfigError("need n_samples >= 4 and n_features >= 1")
        for kind in models:
            gen = self.generator_for(kind)
            if gen == "friedman1" and self.n_features < 5:
                raise ConfigError(f"{kind} uses friedman1, which needs >= 5 features")
            if gen == "linear" and self.n_samples < 2 * self.n_features:
                raise ConfigError(f"{kind} uses linear, which needs n_samples >= 2 * n_features")
            if gen == "two_class" and self.n_samples % 2 != 0:
                raise ConfigError(f"{kind} uses two_class, which needs an even n_samples")

    def generator_for(self, kind: str) -> str:
        return DEFAULT_GENERATOR[kind] if self.generator == "auto" else self.generator

    def echo(self) -> dict:
        return {
            "task": self.task,
            "models": list(self.models),
            "generator": self.generator,
            "n_samples": self.n_samples,
            "n_features": self.n_features,
            "ddr_grid": list(self.ddr_grid),
            "tuples_per_grid_point": self.tuples_per_grid_point,
            "train_fraction": self.train_fraction,
            "class_sep": self.class_sep,
            "burn_in": self.burn_in,
            "thinning": self.thinning,
        }


def seed_derivation(
    master_seed: int, grid_index: int, replicate_index: int, stage_tag: str
) -> int:
    """Collision-resistant seed for one stage of one sweep cell.

    Chained splitmix64 mixing: for any fixed three arguments, varying the
    fourth always changes the seed, and stage tags separate the datagen,
    sampler, split, and model streams.
    """
    return mix_seed(master_seed, grid_index, replicate_index, fnv1a64(stage_tag))


def _grid_key(ddr: float) -> int:
    # Quantized DDR value, so inserting grid points leaves other cells' seeds alone.
    return int(round(float(ddr) * (1 << 30)))


def _split_indices(
    targets: np.ndarray, task: str, train_fraction: float, seed: int
) -> Tuple[np.ndarray, np.ndarray]:
    rng = make_rng(seed)
    n = targets.size
    if task == CLASSIFICATION:
        train_parts, test_parts = [], []
        for label in (0.0, 1.0):
            idx = np.flatnonzero(targets == label)
            idx = idx[rng.permutation(idx.size)]
            cut = int(round(train_fraction * idx.size))
            cut = min(max(cut, 1), idx.size - 1)
            train_parts.append(idx[:cut])
            test_parts.append(idx[cut:])
        return np.sort(np.concatenate(train_parts)), np.sort(np.concatenate(test_parts))
    order = rng.permutation(n)
    cut = min(max(int(round(train_fraction * n)), 1), n - 1)
    return np.sort(order[:cut]), np.sort(order[cut:])


def _run_cell(
    config: ExperimentConfig, kind: str, ddr: float, replicate: int
) -> Tuple[float, float]:
    """Train and score one model on one freshly generated noisy dataset."""
    generator_id = config.generator_for(kind)
    key = _grid_key(ddr)
    tuples = sample_ddr_tuples(
        config.n_features,
        ddr,
        config.tuples_per_grid_point,
        make_rng(seed_derivation(config.master_seed, key, 0, "sampler")),
        burn_in=config.burn_in,
        thinning=config.thinning,
    )
    gen_rng = make_rng(seed_derivation(config.master_seed, key, replicate, "datagen"))
    if generator_id == "two_class":
        clean = GENERATORS[generator_id](
            config.n_samples, config.n_features, gen_rng, class_sep=config.class_sep
        )
    else:
        clean = GENERATORS[generator_id](config.n_samples, config.n_features, gen_rng)
    noisy = datagen.inject_noise(
        clean,
        tuples[replicate],
        make_rng(seed_derivation(config.master_seed, key, replicate, "noise")),
    )
    features = noisy.observed_matrix()
    targets = noisy.targets
    train_idx, test_idx = _split_indices(
        targets,
        config.task,
        config.train_fraction,
        seed_derivation(config.master_seed, key, replicate, "split"),
    )
    spec = ModelSpec(
        kind, seed=seed_derivation(config.master_seed, key, replicate, "model")
    )
    trained = fit(spec, features[train_idx], targets[train_idx])
    metric = f1_score if config.task == CLASSIFICATION else nmse_accuracy
    train_acc = metric(targets[train_idx], predict(trained, features[train_idx]))
    test_acc = metric(targets[test_idx], predict(trained, features[test_idx]))
    return train_acc, test_acc


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip()
    try:
        requested = int(raw) if raw else 0
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if requested < 0:
        raise ConfigError(f"{THREADS_ENV} must be non-negative")
    return requested if requested > 0 else (os.cpu_count() or 1)


def run_experiment(config: ExperimentConfig) -> List[PerformanceReport]:
    """Run the full sweep and return one report per model.

    Cell failures abort only their own cell; the affected model's report is
    marked incomplete, keeps the diagnostics, and carries no AUC.
    """
    cells = [
        (kind, gi, ri)
        for kind in config.models
        for gi in range(len(config.ddr_grid))
        for ri in range(config.tuples_per_grid_point)
    ]

    def work(cell):
        kind, gi, ri = cell
        try:
            return cell, _run_cell(config, kind, config.ddr_grid[gi], ri), None
        except DdrBenchError as exc:
            return cell, None, f"{kind} at ddr={config.ddr_grid[gi]:g} rep={ri}: {exc}"

    threads = _thread_count()
    if threads == 1:
        outcomes = [work(c) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(work, cells))

    scores = {cell: result for cell, result, _ in outcomes if result is not None}
    failures: Dict[str, List[str]] = {}
    for cell, result, message in outcomes:
        if result is None:
            failures.setdefault(cell[0], []).append(message)

    reports = []
    for kind in config.models:
        diagnostics = tuple(sorted(failures.get(kind, ())))
        spec = ModelSpec(kind)
        if diagnostics:
            reports.append(
                PerformanceReport(
                    model=spec,
                    task=config.task,
                    generator=config.generator_for(kind),
                    curve=None,
                    auc_train=None,
                    auc_test=None,
                    trust_points=(),
                    config=config.echo(),
                    master_seed=config.master_seed,
                    incomplete_cells=diagnostics,
                )
            )
            continue
        points = []
        for gi, ddr in enumerate(config.ddr_grid):
            pairs = [scores[(kind, gi, ri)] for ri in range(config.tuples_per_grid_point)]
            train = np.array([p[0] for p in pairs])
            test = np.array([p[1] for p in pairs])
            ddof = 1 if train.size > 1 else 0
            points.append(
                CurvePoint(
                    ddr=ddr,
                    train_accuracy=float(np.mean(train)),
                    test_accuracy=float(np.mean(test)),
                    train_std=float(np.std(train, ddof=ddof)),
                    test_std=float(np.std(test, ddof=ddof)),
                    replicates=train.size,
                )
            )
        curve = AccuracyCurve(
            points=tuple(points), model=spec, dataset=config.generator_for(kind)
        )
        reports.append(report_from_curve(curve, config.echo(), config.master_seed))

    if config.out_dir is not None:
        write_outputs(reports, config.out_dir)
    return reports


# ---------------------------------------------------------------------------
# Persistence: curve CSV, report JSON, and the cross-model summary CSV.

def curve_csv_lines(curve: AccuracyCurve) -> List[str]:
    lines = ["ddr,train_acc_mean,train_acc_std,test_acc_mean,test_acc_std,replicates"]
    for p in curve.points:
        lines.append(
            f"{p.ddr:.6f},{p.train_accuracy:.6f},{p.train_std:.6f},"
            f"{p.test_accuracy:.6f},{p.test_std:.6f},{p.replicates}"
        )
    return lines


def write_curve_csv(curve: AccuracyCurve, path) -> None:
    Path(path).write_text("\n".join(curve_csv_lines(curve)) + "\n", encoding="utf-8")


def report_payload(report: PerformanceReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "model": report.model.kind,
        "task": report.task,
        "generator": report.generator,
        "auc_train": report.auc_train,
        "auc_test": report.auc_test,
        "trust_points": [[d, t] for d, t in report.trust_points],
        "config": report.config,
        "master_seed": report.master_seed,
        "incomplete_cells": list(report.incomplete_cells),
    }


def write_report_json(report: PerformanceReport, path) -> None:
    text = json.dumps(report_payload(report), indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def write_summary_csv(reports: Sequence[dict], path) -> None:
    """Cross-model AUC table from report payloads, sorted by model name."""
    lines = ["model,auc_train,auc_test"]
    for payload in sorted(reports, key=lambda p: p["model"]):
        lines.append(
            f"{payload['model']},{payload['auc_train']:.6f},{payload['auc_test']:.6f}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_outputs(reports: Sequence[PerformanceReport], out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for report in reports:
        if report.curve is not None:
            write_curve_csv(report.curve, out / f"{report.model.kind}_curve.csv")
        write_report_json(report, out / f"{report.model.kind}_report.json")


def resolve_models(task: str, selector: str) -> Tuple[str, ...]:
    """Expand a CLI model selector ('all' or comma-separated kinds)."""
    if selector.strip().lower() == "all":
        return REGRESSION_KINDS if task == REGRESSION else CLASSIFICATION_KINDS
    kinds = tuple(part.strip().lower() for part in selector.split(",") if part.strip())
    if not kinds:
        raise ConfigError("no models given")
    return kinds

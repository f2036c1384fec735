"""Accuracy metrics, trust points, and the normalized-AUC performance score."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateTargetError, DomainError
from .models import ModelSpec
from .signals import DdrValue


def nmse_accuracy(y_true, y_pred) -> float:
    """1 minus the MSE normalized by the population target variance, floored at 0.

    Perfect predictions score 1; predicting the target mean scores 0.
    """
    yt = np.asarray(y_true, dtype=np.float64)
    yp = np.asarray(y_pred, dtype=np.float64)
    if yt.shape != yp.shape or yt.ndim != 1 or yt.size < 2:
        raise DomainError("need two equal-length vectors of at least two values")
    variance = float(np.var(yt))
    if variance == 0.0:
        raise DegenerateTargetError("targets have zero variance")
    mse = float(np.mean(np.square(yt - yp)))
    return max(0.0, 1.0 - mse / variance)


def f1_score(y_true, y_pred) -> float:
    """F1 with class 1 positive; 1.0 for an empty confusion, 0.0 when TP = 0."""
    yt = np.asarray(y_true, dtype=np.float64)
    yp = np.asarray(y_pred, dtype=np.float64)
    if yt.shape != yp.shape or yt.ndim != 1:
        raise DomainError("need two equal-length label vectors")
    if not (set(np.unique(yt)) <= {0.0, 1.0} and set(np.unique(yp)) <= {0.0, 1.0}):
        raise DomainError("labels must all be 0 or 1")
    tp = float(np.sum((yt == 1.0) & (yp == 1.0)))
    fp = float(np.sum((yt == 0.0) & (yp == 1.0)))
    fn = float(np.sum((yt == 1.0) & (yp == 0.0)))
    if tp == 0.0:
        return 1.0 if fp == 0.0 and fn == 0.0 else 0.0
    return 2.0 * tp / (2.0 * tp + fp + fn)


def trust_point(accuracy: float, ddr: float) -> float:
    """Single-point trustworthiness: accuracy times DDR."""
    acc = float(accuracy)
    if not 0.0 <= acc <= 1.0:
        raise DomainError(f"accuracy must lie in [0, 1], got {acc!r}")
    return acc * float(DdrValue(ddr))


@dataclass(frozen=True)
class CurvePoint:
    """One grid point of an accuracy-DDR curve, aggregated over replicates."""

    ddr: float
    train_accuracy: float
    test_accuracy: float
    train_std: float
    test_std: float
    replicates: int


@dataclass(frozen=True, eq=False)
class AccuracyCurve:
    """Accuracy against dataset-level DDR for one model on one generator.

    Points are strictly increasing in DDR and span the full [0, 1] range.
    """

    points: Tuple[CurvePoint, ...]
    model: ModelSpec
    dataset: str

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise DomainError("a curve needs at least its two endpoints")
        ddrs = [p.ddr for p in self.points]
        if any(b <= a for a, b in zip(ddrs, ddrs[1:])):
            raise DomainError("curve points must be strictly increasing in DDR")
        if ddrs[0] != 0.0 or ddrs[-1] != 1.0:
            raise DomainError("curve must span DDR 0 to 1")
        for p in self.points:
            if not (0.0 <= p.train_accuracy <= 1.0 and 0.0 <= p.test_accuracy <= 1.0):
                raise DomainError("accuracies must lie in [0, 1]")

    def ddrs(self) -> np.ndarray:
        return np.array([p.ddr for p in self.points])

    def accuracies(self, which: str) -> np.ndarray:
        if which == "train":
            return np.array([p.train_accuracy for p in self.points])
        if which == "test":
            return np.array([p.test_accuracy for p in self.points])
        raise DomainError(f"which must be 'train' or 'test', got {which!r}")


def normalized_auc(curve: AccuracyCurve, which: str = "test") -> float:
    """Trapezoidal area under accuracy(DDR) for DDR in [0, 1].

    The domain has unit length, so the raw area is already normalized.
    """
    return float(np.trapezoid(curve.accuracies(which), curve.ddrs()))


@dataclass(frozen=True, eq=False)
class PerformanceReport:
    """Per-model sweep outcome: curve, AUCs, trust points, and the config echo.

    AUCs are None when any experiment cell failed; such reports are flagged
    incomplete and carry the per-cell diagnostics.
    """

    model: ModelSpec
    task: str
    generator: str
    curve: Optional[AccuracyCurve]
    auc_train: Optional[float]
    auc_test: Optional[float]
    trust_points: Tuple[Tuple[float, float], ...]
    config: dict
    master_seed: int
    incomplete_cells: Tuple[str, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.incomplete_cells


def report_from_curve(
    curve: AccuracyCurve, config: dict, master_seed: int
) -> PerformanceReport:
    """Assemble the complete-report case: AUCs plus test-accuracy trust points."""
    return PerformanceReport(
        model=curve.model,
        task=curve.model.task,
        generator=curve.dataset,
        curve=curve,
        auc_train=normalized_auc(curve, "train"),
        auc_test=normalized_auc(curve, "test"),
        trust_points=tuple(
            (p.ddr, trust_point(p.test_accuracy, p.ddr)) for p in curve.points
        ),
        config=config,
        master_seed=master_seed,
    )

"""Bottom-up synthetic dataset construction.

Clean deterministic features come first, targets are computed from the clean
features only, and noise is then injected into the features at prescribed
per-column DDRs.  Targets never receive noise: all non-determinism enters
the learning problem through the feature matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from .errors import DegenerateDeterministicError, DomainError
from .rng import RandomSource
from .sampler import DdrTuple
from .signals import DdrValue, DecomposedSignal, Signal, matrix_ddr_two_norm
from .standardize import ddr_invariant_standardize

REGRESSION = "regression"
CLASSIFICATION = "binary-classification"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.float64).copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class CleanDataset:
    """Noise-free features plus targets derived from them."""

    features: np.ndarray
    targets: np.ndarray
    task: str
    generator_id: str

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        targets = np.asarray(self.targets, dtype=np.float64)
        if features.ndim != 2 or features.shape[1] < 1:
            raise DomainError("features must be a matrix with at least one column")
        if targets.ndim != 1 or targets.size != features.shape[0]:
            raise DomainError("targets must be one value per sample row")
        if not (np.all(np.isfinite(features)) and np.all(np.isfinite(targets))):
            raise DomainError("dataset values must all be finite")
        if self.task not in (REGRESSION, CLASSIFICATION):
            raise DomainError(f"unknown task {self.task!r}")
        if self.task == CLASSIFICATION:
            labels = set(np.unique(targets))
            if not labels <= {0.0, 1.0}:
                raise DomainError("classification targets must be 0/1 labels")
            if targets.size >= 4 and len(labels) != 2:
                raise DomainError("classification targets must contain both classes")
        object.__setattr__(self, "features", _freeze(features))
        object.__setattr__(self, "targets", _freeze(targets))

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def to_csv(self, path) -> None:
        _write_csv(path, self.features, self.targets)


@dataclass(frozen=True, eq=False)
class NoisyDataset:
    """Standardized noisy feature columns with targets copied from the clean data."""

    columns: Tuple[DecomposedSignal, ...]
    targets: np.ndarray
    ddr_tuple: DdrTuple
    matrix_ddr: DdrValue
    task: str
    generator_id: str

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.ddr_tuple):
            raise DomainError("one DDR per feature column is required")
        object.__setattr__(self, "targets", _freeze(self.targets))
        expected = matrix_ddr_two_norm(self.ddr_tuple.rs)
        if abs(float(self.matrix_ddr) - float(expected)) > 1e-12:
            raise DomainError("matrix_ddr must equal the two-norm of the tuple")

    @property
    def n_samples(self) -> int:
        return len(self.columns[0])

    def observed_matrix(self) -> np.ndarray:
        return np.column_stack([c.observed.values for c in self.columns])

    def to_csv(self, path) -> None:
        _write_csv(path, self.observed_matrix(), self.targets)


def _write_csv(path, features: np.ndarray, targets: np.ndarray) -> None:
    header = ",".join(f"f{j + 1}" for j in range(features.shape[1])) + ",target"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row, y in zip(features, targets):
            fh.write(",".join(f"{v:.6f}" for v in row) + f",{y:.6f}\n")


def gen_linear_regression(
    n_samples: int, n_features: int, rng: RandomSource
) -> CleanDataset:
    """Gaussian features with targets from a hidden linear map.

    Weights are i.i.d. U[-1, 1]; targets carry no additive noise, so an exact
    least-squares fit on the clean data recovers the weights.
    """
    if n_samples < 2 * n_features:
        raise DomainError("need n_samples >= 2 * n_features for a stable fit")
    features = rng.standard_normal((n_samples, n_features))
    weights = rng.uniform(-1.0, 1.0, size=n_features)
    targets = features @ weights
    return CleanDataset(features, targets, REGRESSION, "linear")


def gen_friedman1(n_samples: int, n_features: int, rng: RandomSource) -> CleanDataset:
    """The Friedman #1 benchmark surface over U[0,1] features.

    y = 10 sin(pi x1 x2) + 20 (x3 - 0.5)^2 + 10 x4 + 5 x5; columns beyond the
    fifth are inert distractors.
    """
    if n_features < 5:
        raise DomainError("the Friedman #1 surface needs at least five features")
    x = rng.uniform(0.0, 1.0, size=(n_samples, n_features))
    targets = (
        10.0 * np.sin(math.pi * x[:, 0] * x[:, 1])
        + 20.0 * np.square(x[:, 2] - 0.5)
        + 10.0 * x[:, 3]
        + 5.0 * x[:, 4]
    )
    return CleanDataset(x, targets, REGRESSION, "friedman1")


def informative_count(n_features: int) -> int:
    """Size of the random coordinate subset that carries class separation."""
    return min(n_features, max(2, n_features // 5))


def gen_two_class(
    n_samples: int, n_features: int, rng: RandomSource, class_sep: float = 2.0
) -> CleanDataset:
    """Two identity-covariance Gaussian clusters at +/- class_sep along a random axis.

    The separation axis is a random unit vector supported on a small random
    coordinate subset, so the remaining columns are inert distractors in the
    same spirit as the Friedman surface.  Labels are exactly balanced; rows
    are shuffled so positional splits stay representative.
    """
    if n_samples < 4 or n_samples % 2 != 0:
        raise DomainError("two-class generation needs an even n_samples >= 4")
    if class_sep < 0.0:
        raise DomainError("class separation must be non-negative")
    n_informative = informative_count(n_features)
    support = np.sort(rng.choice(n_features, size=n_informative, replace=False))
    axis = np.zeros(n_features)
    axis[support] = rng.standard_normal(n_informative)
    axis /= np.linalg.norm(axis)
    half = n_samples // 2
    labels = np.concatenate([np.zeros(half), np.ones(half)])
    centers = np.where(labels[:, None] > 0.5, class_sep, -class_sep) * axis
    features = centers + rng.standard_normal((n_samples, n_features))
    order = rng.permutation(n_samples)
    return CleanDataset(features[order], labels[order], CLASSIFICATION, "two_class")


GeneratorFn = Callable[..., CleanDataset]

GENERATORS: Dict[str, GeneratorFn] = {
    "linear": gen_linear_regression,
    "friedman1": gen_friedman1,
    "two_class": gen_two_class,
}

GENERATOR_TASKS: Dict[str, str] = {
    "linear": REGRESSION,
    "friedman1": REGRESSION,
    "two_class": CLASSIFICATION,
}


def inject_noise(
    clean: CleanDataset, ddr_tuple: DdrTuple, rng: RandomSource
) -> NoisyDataset:
    """Standardize every clean feature column at its per-column DDR.

    Targets are copied untouched.  A constant clean column is only legal at
    r = 0; otherwise the degenerate-column error names the offending index.
    """
    if len(ddr_tuple) != clean.n_features:
        raise DomainError(
            f"tuple has {len(ddr_tuple)} entries for {clean.n_features} columns"
        )
    columns = []
    for j, r in enumerate(ddr_tuple.rs):
        try:
            columns.append(
                ddr_invariant_standardize(Signal(clean.features[:, j]), r, rng)
            )
        except DegenerateDeterministicError as exc:
            raise DegenerateDeterministicError(
                f"feature column {j} is constant but requests DDR {float(r):g}"
            ) from exc
    return NoisyDataset(
        columns=tuple(columns),
        targets=clean.targets,
        ddr_tuple=ddr_tuple,
        matrix_ddr=matrix_ddr_two_norm(ddr_tuple.rs),
        task=clean.task,
        generator_id=clean.generator_id,
    )

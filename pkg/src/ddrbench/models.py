"""Nine learners behind one fit/predict contract, implemented from scratch.

Regressors: ordinary least squares (olsr), CART regression tree (dtr),
k-nearest neighbors (knnr), linear epsilon-insensitive SVR (lsvr).
Classifiers: binary logistic regression (blrc), CART classification tree
(dtc), k-nearest neighbors (knnc), linear hinge-loss SVC (lsvc), one-hidden-
layer perceptron (mlpc).  Every trainer is deterministic given the spec's
seed; no hyperparameter tuning happens anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from .datagen import CLASSIFICATION, REGRESSION
from .errors import DomainError
from .rng import make_rng

REGRESSION_KINDS: Tuple[str, ...] = ("olsr", "dtr", "knnr", "lsvr")
CLASSIFICATION_KINDS: Tuple[str, ...] = ("blrc", "dtc", "knnc", "lsvc", "mlpc")
MODEL_KINDS: Tuple[str, ...] = REGRESSION_KINDS + CLASSIFICATION_KINDS

TASK_OF_KIND: Dict[str, str] = {
    **{kind: REGRESSION for kind in REGRESSION_KINDS},
    **{kind: CLASSIFICATION for kind in CLASSIFICATION_KINDS},
}

DEFAULT_PARAMS: Dict[str, Dict[str, object]] = {
    "olsr": {},
    "dtr": {"max_depth": 10, "min_samples_split": 80},
    "dtc": {"max_depth": 10, "min_samples_split": 80},
    "knnr": {"k": 5},
    "knnc": {"k": 5},
    "lsvr": {"epsilon": 0.1, "c": 1.0, "epochs": 200, "step": 1e-3},
    "lsvc": {"c": 1.0, "epochs": 200, "step": 1e-3},
    "blrc": {"iterations": 500, "step": 0.1},
    "mlpc": {"hidden_units": 32, "epochs": 300, "step": 0.05, "init_scale": 0.5},
}


def _validate_params(kind: str, params: Mapping[str, object]) -> None:
    known = set(DEFAULT_PARAMS[kind])
    unknown = set(params) - known
    if unknown:
        raise DomainError(f"unknown hyperparameters for {kind}: {sorted(unknown)}")
    positive = {"c", "step", "init_scale"}
    counts = {"epochs", "iterations", "hidden_units", "k"}
    for name, value in params.items():
        if name == "max_depth":
            if value is not None and (int(value) != value or int(value) < 0):
                raise DomainError("max_depth must be None or a non-negative integer")
        elif name == "min_samples_split":
            if int(value) != value or int(value) < 2:
                raise DomainError("min_samples_split must be an integer >= 2")
        elif name == "epsilon":
            if float(value) < 0.0:
                raise DomainError("epsilon must be non-negative")
        elif name in positive and float(value) <= 0.0:
            raise DomainError(f"{name} must be positive")
        elif name in counts and (int(value) != value or int(value) < 1):
            raise DomainError(f"{name} must be a positive integer")


@dataclass(frozen=True)
class ModelSpec:
    """Model kind plus hyperparameter overrides and a training seed."""

    kind: str
    params: Mapping[str, object] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        kind = str(self.kind).lower()
        if kind not in MODEL_KINDS:
            raise DomainError(
                f"unknown model kind {self.kind!r}; valid kinds: {', '.join(MODEL_KINDS)}"
            )
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", dict(self.params))
        _validate_params(kind, self.params)

    @property
    def task(self) -> str:
        return TASK_OF_KIND[self.kind]

    @property
    def hyperparameters(self) -> Dict[str, object]:
        merged = dict(DEFAULT_PARAMS[self.kind])
        merged.update(self.params)
        return merged


@dataclass(frozen=True, eq=False)
class TrainedModel:
    """A fitted learner; the learned parameters are opaque to callers."""

    spec: ModelSpec
    task: str
    n_features: int
    impl: object


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


class OlsRegressor:
    """Least squares through an orthogonal decomposition.

    Singular systems fall back to the minimum-norm solution.
    """

    def fit(self, X: np.ndarray, y: np.ndarray) -> "OlsRegressor":
        design = np.column_stack([X, np.ones(X.shape[0])])
        coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
        self.weights = coef[:-1]
        self.intercept = float(coef[-1])
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        return X @ self.weights + self.intercept


class _Node:
    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, value=None, feature=None, threshold=None, left=None, right=None):
        self.value = value
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right


def _best_split(X: np.ndarray, y: np.ndarray, classification: bool):
    """Exhaustive split search; score is the summed child impurity.

    Ties go to the lowest feature index, then the lowest threshold, realized
    by scanning scores in feature-major order and keeping the first minimum.
    Thresholds equal the largest left-child value so both children are
    guaranteed non-empty.
    """
    n = X.shape[0]
    order = np.argsort(X, axis=0, kind="stable")
    xs = np.take_along_axis(X, order, axis=0)
    ys = y[order]
    valid = xs[:-1] < xs[1:]
    if not np.any(valid):
        return None
    k = np.arange(1, n, dtype=np.float64)[:, None]
    m = n - k
    if classification:
        ones_left = np.cumsum(ys, axis=0)[:-1]
        ones_right = float(np.sum(y)) - ones_left
        score = 2.0 * ones_left * (k - ones_left) / k
        score += 2.0 * ones_right * (m - ones_right) / m
    else:
        cy = np.cumsum(ys, axis=0)[:-1]
        cy2 = np.cumsum(np.square(ys), axis=0)[:-1]
        ty = float(np.sum(y))
        ty2 = float(np.sum(np.square(y)))
        score = cy2 - np.square(cy) / k
        score += (ty2 - cy2) - np.square(ty - cy) / m
    score = np.where(valid, score, np.inf)
    flat = int(np.argmin(score.T))
    feature, cut = divmod(flat, n - 1)
    if not np.isfinite(score[cut, feature]):
        return None
    return feature, float(xs[cut, feature])


class CartTree:
    """CART with variance-reduction (regression) or Gini (classification) splits.

    Leaf values are the target mean for regression and the majority class for
    classification, majority ties resolved to class 1.
    """

    def __init__(self, max_depth: Optional[int], min_samples_split: int, classification: bool):
        self.max_depth = math.inf if max_depth is None else int(max_depth)
        self.min_samples_split = int(min_samples_split)
        self.classification = classification

    def _leaf(self, y: np.ndarray) -> _Node:
        if self.classification:
            value = 1.0 if 2.0 * float(np.sum(y)) >= y.size else 0.0
        else:
            value = float(np.mean(y))
        return _Node(value=value)

    def _grow(self, X: np.ndarray, y: np.ndarray, depth: int) -> _Node:
        if (
            depth >= self.max_depth
            or y.size < self.min_samples_split
            or np.all(y == y[0])
        ):
            return self._leaf(y)
        split = _best_split(X, y, self.classification)
        if split is None:
            return self._leaf(y)
        feature, threshold = split
        mask = X[:, feature] <= threshold
        node = _Node(feature=feature, threshold=threshold)
        node.left = self._grow(X[mask], y[mask], depth + 1)
        node.right = self._grow(X[~mask], y[~mask], depth + 1)
        return node

    def fit(self, X: np.ndarray, y: np.ndarray) -> "CartTree":
        self.root = self._grow(X, y, 0)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(X.shape[0])
        stack = [(self.root, np.arange(X.shape[0]))]
        while stack:
            node, idx = stack.pop()
            if idx.size == 0:
                continue
            if node.value is not None:
                out[idx] = node.value
                continue
            mask = X[idx, node.feature] <= node.threshold
            stack.append((node.left, idx[mask]))
            stack.append((node.right, idx[~mask]))
        return out


class KnnModel:
    """Brute-force k-nearest neighbors with Euclidean distance.

    Distance ties resolve to the lowest training index (stable sort); vote
    ties resolve to class 1.
    """

    def __init__(self, k: int, classification: bool):
        self.k = int(k)
        self.classification = classification

    def fit(self, X: np.ndarray, y: np.ndarray) -> "KnnModel":
        if self.k > X.shape[0]:
            raise DomainError(f"k={self.k} exceeds the {X.shape[0]} training samples")
        self.X = X
        self.y = y
        self._sq = np.sum(np.square(X), axis=1)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        d2 = np.sum(np.square(X), axis=1, keepdims=True) - 2.0 * (X @ self.X.T) + self._sq
        nearest = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        votes = self.y[nearest]
        if self.classification:
            return (2.0 * np.sum(votes, axis=1) >= self.k).astype(np.float64)
        return np.mean(votes, axis=1)


class LinearSvr:
    """Linear epsilon-insensitive regression trained by subgradient descent.

    Objective: 0.5 ||w||^2 + c * sum_i max(0, |w.x_i + b - y_i| - epsilon),
    with step_t = step / sqrt(t) over full-batch epochs.
    """

    def __init__(self, epsilon: float, c: float, epochs: int, step: float):
        self.epsilon = float(epsilon)
        self.c = float(c)
        self.epochs = int(epochs)
        self.step = float(step)

    def fit(self, X: np.ndarray, y: np.ndarray) -> "LinearSvr":
        w = np.zeros(X.shape[1])
        b = 0.0
        for t in range(1, self.epochs + 1):
            residual = X @ w + b - y
            sign = np.sign(residual) * (np.abs(residual) > self.epsilon)
            eta = self.step / math.sqrt(t)
            w -= eta * (w + self.c * (X.T @ sign))
            b -= eta * self.c * float(np.sum(sign))
        self.weights = w
        self.intercept = b
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        return X @ self.weights + self.intercept


class LinearSvc:
    """Linear hinge-loss classifier trained by subgradient descent.

    Same schedule as the regressor; scores of exactly zero predict class 1.
    """

    def __init__(self, c: float, epochs: int, step: float):
        self.c = float(c)
        self.epochs = int(epochs)
        self.step = float(step)

    def fit(self, X: np.ndarray, y: np.ndarray) -> "LinearSvc":
        signed = 2.0 * y - 1.0
        w = np.zeros(X.shape[1])
        b = 0.0
        for t in range(1, self.epochs + 1):
            margins = signed * (X @ w + b)
            active = signed * (margins < 1.0)
            eta = self.step / math.sqrt(t)
            w -= eta * (w - self.c * (X.T @ active))
            b += eta * self.c * float(np.sum(active))
        self.weights = w
        self.intercept = b
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (X @ self.weights + self.intercept >= 0.0).astype(np.float64)


class LogisticClassifier:
    """Binary logistic regression by full-batch gradient descent.

    Probability ties at 0.5 predict class 1, so the zero-weight model labels
    everything 1.
    """

    def __init__(self, iterations: int, step: float):
        self.iterations = int(iterations)
        self.step = float(step)

    def fit(self, X: np.ndarray, y: np.ndarray) -> "LogisticClassifier":
        n = X.shape[0]
        w = np.zeros(X.shape[1])
        b = 0.0
        for _ in range(self.iterations):
            gap = _sigmoid(X @ w + b) - y
            w -= self.step * (X.T @ gap) / n
            b -= self.step * float(np.mean(gap))
        self.weights = w
        self.intercept = b
        return self

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return _sigmoid(X @ self.weights + self.intercept)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(np.float64)


class MlpClassifier:
    """One hidden tanh layer, logistic output, mean cross-entropy loss.

    Full-batch gradient descent with a fixed step; weights and biases start
    i.i.d. U[-init_scale, init_scale] from the given seed.  The per-epoch
    loss history is kept on the fitted model.
    """

    def __init__(self, hidden_units: int, epochs: int, step: float, init_scale: float, seed: int):
        self.hidden_units = int(hidden_units)
        self.epochs = int(epochs)
        self.step = float(step)
        self.init_scale = float(init_scale)
        self.seed = int(seed)

    @staticmethod
    def loss_and_grads(params: Dict[str, np.ndarray], X: np.ndarray, y: np.ndarray):
        """Mean cross-entropy and its analytic gradients for every parameter."""
        n = X.shape[0]
        z1 = X @ params["w1"] + params["b1"]
        hidden = np.tanh(z1)
        z2 = hidden @ params["w2"] + params["b2"]
        loss = float(np.mean(np.logaddexp(0.0, z2) - y * z2))
        dz2 = (_sigmoid(z2) - y) / n
        dhidden = np.outer(dz2, params["w2"])
        dz1 = dhidden * (1.0 - np.square(hidden))
        grads = {
            "w1": X.T @ dz1,
            "b1": np.sum(dz1, axis=0),
            "w2": hidden.T @ dz2,
            "b2": np.sum(dz2),
        }
        return loss, grads

    @staticmethod
    def init_params(n_features: int, hidden_units: int, init_scale: float, seed: int):
        rng = make_rng(seed)
        return {
            "w1": rng.uniform(-init_scale, init_scale, size=(n_features, hidden_units)),
            "b1": rng.uniform(-init_scale, init_scale, size=hidden_units),
            "w2": rng.uniform(-init_scale, init_scale, size=hidden_units),
            "b2": rng.uniform(-init_scale, init_scale, size=()),
        }

    def fit(self, X: np.ndarray, y: np.ndarray) -> "MlpClassifier":
        params = self.init_params(X.shape[1], self.hidden_units, self.init_scale, self.seed)
        history = []
        for _ in range(self.epochs):
            loss, grads = self.loss_and_grads(params, X, y)
            history.append(loss)
            for name in params:
                params[name] = params[name] - self.step * grads[name]
        history.append(self.loss_and_grads(params, X, y)[0])
        self.params = params
        self.loss_history = history
        return self

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        hidden = np.tanh(X @ self.params["w1"] + self.params["b1"])
        return _sigmoid(hidden @ self.params["w2"] + self.params["b2"])

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(np.float64)


def _build(spec: ModelSpec):
    hp = spec.hyperparameters
    kind = spec.kind
    if kind == "olsr":
        return OlsRegressor()
    if kind in ("dtr", "dtc"):
        return CartTree(hp["max_depth"], hp["min_samples_split"], kind == "dtc")
    if kind in ("knnr", "knnc"):
        return KnnModel(hp["k"], kind == "knnc")
    if kind == "lsvr":
        return LinearSvr(hp["epsilon"], hp["c"], hp["epochs"], hp["step"])
    if kind == "lsvc":
        return LinearSvc(hp["c"], hp["epochs"], hp["step"])
    if kind == "blrc":
        return LogisticClassifier(hp["iterations"], hp["step"])
    if kind == "mlpc":
        return MlpClassifier(
            hp["hidden_units"], hp["epochs"], hp["step"], hp["init_scale"], spec.seed
        )
    raise DomainError(f"unknown model kind {kind!r}")


def _check_features(features: np.ndarray) -> np.ndarray:
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise DomainError("features must be a non-empty matrix")
    if not np.all(np.isfinite(X)):
        raise DomainError("features must all be finite")
    return X


def fit(spec: ModelSpec, features: np.ndarray, targets: np.ndarray) -> TrainedModel:
    """Train the learner named by the spec; deterministic given spec.seed."""
    X = _check_features(features)
    y = np.asarray(targets, dtype=np.float64)
    if y.ndim != 1 or y.size != X.shape[0]:
        raise DomainError("targets must be one value per feature row")
    if not np.all(np.isfinite(y)):
        raise DomainError("targets must all be finite")
    task = TASK_OF_KIND[spec.kind]
    if task == CLASSIFICATION and not set(np.unique(y)) <= {0.0, 1.0}:
        raise DomainError("classification targets must be 0/1 labels")
    impl = _build(spec).fit(X, y)
    return TrainedModel(spec=spec, task=task, n_features=X.shape[1], impl=impl)


def predict(model: TrainedModel, features: np.ndarray) -> np.ndarray:
    """Predict with a trained model; column count must match training."""
    X = _check_features(features)
    if X.shape[1] != model.n_features:
        raise DomainError(
            f"model was trained on {model.n_features} features, got {X.shape[1]}"
        )
    return model.impl.predict(X)

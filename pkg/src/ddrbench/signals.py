"""Signal decomposition primitives and power/DDR arithmetic.

Observed data is modeled as the sum of a deterministic part D and a noise
part E.  The deterministic-to-data ratio (DDR) measures the fraction of the
observed power carried by D: 1 means fully deterministic data, 0 pure noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DegenerateSignalError, DomainError

ArrayLike = Union[Sequence[float], np.ndarray]


def _as_values(values: ArrayLike) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DomainError(f"signal must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise DomainError("signal must contain at least one value")
    if not np.all(np.isfinite(arr)):
        raise DomainError("signal values must all be finite")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """A finite-length sequence of finite reals, indexed 1..n.

    The stored array is an immutable float64 copy of the input.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _as_values(self.values))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True, eq=False)
class DecomposedSignal:
    """Additive decomposition of an observed signal into parts D and E.

    The observed signal D + E is derived on demand and never stored.
    """

    deterministic: Signal
    noise: Signal

    def __post_init__(self) -> None:
        if len(self.deterministic) != len(self.noise):
            raise DomainError(
                "deterministic and noise parts must have equal length, got "
                f"{len(self.deterministic)} and {len(self.noise)}"
            )

    def __len__(self) -> int:
        return len(self.deterministic)

    @property
    def observed(self) -> Signal:
        return Signal(self.deterministic.values + self.noise.values)


class PowerValue(float):
    """Mean squared value of a signal; non-negative by construction."""

    def __new__(cls, value: float) -> "PowerValue":
        v = float(value)
        if not math.isfinite(v) or v < 0.0:
            raise DomainError(f"power must be a finite non-negative real, got {v!r}")
        return super().__new__(cls, v)


class DdrValue(float):
    """A deterministic-to-data ratio, always in [0, 1].

    Out-of-range ratios are never accepted silently; `DdrValue.clamped` is
    the one documented way to coerce a raw ratio into range, and it keeps
    the unclamped value on the `raw` attribute for diagnostics.
    """

    raw: float

    def __new__(cls, value: float) -> "DdrValue":
        v = float(value)
        if math.isnan(v) or not 0.0 <= v <= 1.0:
            raise DomainError(f"DDR must lie in [0, 1], got {v!r}")
        obj = super().__new__(cls, v)
        obj.raw = v
        return obj

    @classmethod
    def clamped(cls, raw: float) -> "DdrValue":
        """Clamp a raw ratio into [0, 1], recording the unclamped value."""
        r = float(raw)
        if math.isnan(r):
            raise DomainError("cannot clamp NaN into a DDR")
        obj = super().__new__(cls, min(max(r, 0.0), 1.0))
        obj.raw = r
        return obj


def _values_of(x: Union[Signal, ArrayLike]) -> np.ndarray:
    return x.values if isinstance(x, Signal) else _as_values(x)


def power(x: Union[Signal, ArrayLike]) -> PowerValue:
    """Mean of squares: (1/n) * sum(x_t^2).

    Zero exactly when every value is zero.  numpy's pairwise summation keeps
    the result stable for long signals.
    """
    vals = _values_of(x)
    return PowerValue(float(np.sum(np.square(vals)) / vals.size))


def ddr_exact(s: DecomposedSignal) -> DdrValue:
    """Power ratio P(D) / P(D + E), clamped into [0, 1].

    On finite samples the raw ratio can exceed 1 when D and E are negatively
    correlated; the unclamped ratio stays available as `.raw`.
    """
    p_obs = power(s.observed)
    if p_obs == 0.0:
        raise DegenerateSignalError("observed signal has zero power")
    return DdrValue.clamped(power(s.deterministic) / p_obs)


def ddr_approx(s: DecomposedSignal) -> DdrValue:
    """Cross-term-free ratio P(D) / (P(D) + P(E)); in [0, 1] by construction.

    Coincides with `ddr_exact` exactly when sum(D*E) = 0, and converges to it
    for long signals with independent zero-mean noise.
    """
    p_det = power(s.deterministic)
    p_noise = power(s.noise)
    denom = p_det + p_noise
    if denom == 0.0:
        raise DegenerateSignalError("both parts of the signal have zero power")
    return DdrValue(p_det / denom)


def matrix_ddr_power_ratio(columns: Sequence[DecomposedSignal]) -> DdrValue:
    """Dataset-level DDR as a pooled power ratio: sum_i P(D_i) / sum_i P(Y_i)."""
    if len(columns) == 0:
        raise DomainError("matrix DDR needs at least one column")
    det_total = sum(power(c.deterministic) for c in columns)
    obs_total = sum(power(c.observed) for c in columns)
    if obs_total == 0.0:
        raise DegenerateSignalError("observed matrix has zero power in every column")
    return DdrValue.clamped(det_total / obs_total)


def matrix_ddr_two_norm(rs: Sequence[float]) -> DdrValue:
    """Dataset-level DDR R from per-column DDRs via n * R^2 = sum(r_i^2)."""
    if len(rs) == 0:
        raise DomainError("matrix DDR needs at least one per-column DDR")
    values = np.asarray([float(DdrValue(r)) for r in rs])
    return DdrValue(math.sqrt(float(np.mean(np.square(values)))))

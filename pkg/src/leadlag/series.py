"""Core series types, normalization, returns, and correlation utilities.

Conventions fixed here and used everywhere else:

* normalization is a z-score with the sample (n-1) standard deviation,
  applied once at ingestion, so ``sqrt(2 * (1 - rho))`` is the Euclidean
  distance between unit-variance, zero-mean series;
* ``uncentered_corr`` is the plain cosine of two vectors (no mean
  subtraction) and is the inner product used by the local alignment cost;
  ``pearson`` is the centered coefficient and is used only where a plain
  "correlation" of full series is reported.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, SeriesTooShortError, ZeroNormError, ZeroVarianceError

__all__ = [
    "TimeSeries",
    "ReturnSeries",
    "PaddedReturnSeries",
    "normalize",
    "returns",
    "pearson",
    "uncentered_corr",
]


def _as_float_array(values, min_len, what):
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DataError(f"{what} must be one-dimensional, got shape {arr.shape}")
    if arr.size < min_len:
        raise SeriesTooShortError(f"{what} needs at least {min_len} points, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{what} contains non-finite values")
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """An ordered, finite, length >= 2 sequence of price-like values."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", _as_float_array(self.values, 2, "time series"))

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class ReturnSeries:
    """First differences of a :class:`TimeSeries`; one element shorter."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_float_array(self.values, 1, "return series"))

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class PaddedReturnSeries:
    """A return series with ``pad`` zeros appended at both ends.

    The padding makes every window of length ``2 * pad + 1`` centered on a
    return index well defined; out-of-range positions read exactly zero.
    """

    inner: ReturnSeries
    pad: int
    padded: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.pad < 0:
            raise DataError(f"pad must be nonnegative, got {self.pad}")
        z = np.zeros(self.pad)
        object.__setattr__(self, "padded", np.concatenate([z, self.inner.values, z]))

    @classmethod
    def for_window(cls, inner: ReturnSeries, window: int) -> "PaddedReturnSeries":
        """Pad for a centered window of odd length ``window``."""
        return cls(inner, window // 2)

    def __len__(self):
        return self.padded.size


def normalize(raw: TimeSeries) -> TimeSeries:
    """Z-score a series to mean 0 and sample (n-1) standard deviation 1."""
    v = raw.values
    if np.all(v == v[0]):
        raise ZeroVarianceError(f"cannot normalize constant series {raw.label!r}")
    sd = v.std(ddof=1)
    if sd == 0.0:
        raise ZeroVarianceError(f"cannot normalize zero-variance series {raw.label!r}")
    return TimeSeries((v - v.mean()) / sd, raw.label)


def returns(x: TimeSeries) -> ReturnSeries:
    """Exact first differences; output length is ``len(x) - 1``."""
    return ReturnSeries(np.diff(x.values))


def pearson(u, v) -> float:
    """Centered Pearson correlation of two equal-length sequences."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DataError(f"length mismatch: {u.shape} vs {v.shape}")
    if u.size < 2:
        raise SeriesTooShortError("pearson needs at least 2 points")
    if np.array_equal(u, v):
        if np.all(u == u[0]):
            raise ZeroVarianceError("pearson undefined for constant input")
        return 1.0
    du = u - u.mean()
    dv = v - v.mean()
    su = np.dot(du, du)
    sv = np.dot(dv, dv)
    if su == 0.0 or sv == 0.0:
        raise ZeroVarianceError("pearson undefined for constant input")
    r = np.dot(du, dv) / np.sqrt(su * sv)
    return float(min(1.0, max(-1.0, r)))


def uncentered_corr(u, v) -> float:
    """Cosine similarity of two equal-length vectors (no mean-centering)."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DataError(f"length mismatch: {u.shape} vs {v.shape}")
    if u.size < 1:
        raise SeriesTooShortError("uncentered_corr needs at least 1 point")
    su = np.dot(u, u)
    sv = np.dot(v, v)
    if su == 0.0 or sv == 0.0:
        raise ZeroNormError("uncentered_corr undefined for a zero-norm vector")
    if np.array_equal(u, v):
        return 1.0
    r = np.dot(u, v) / np.sqrt(su * sv)
    return float(min(1.0, max(-1.0, r)))

"""Synthetic benchmark series with known piecewise-constant lead-lag.

The driving process is a stationary AR(1): X(t) = b*X(t-1) + xi with
xi ~ N(0, sigma_xi) and X(0) drawn from N(0, sigma_xi^2 / (1 - b^2)).
The follower is Y(i) = a * X(i - lag(i)) + eta with eta ~ N(0, f*sigma_xi),
where lag(i) follows one of four fixed schedules. X is generated with
enough pre/post-roll that every shifted index reads a true process value.

Schedules are defined on length 300; other lengths scale the segment
boundaries proportionally. Where two segments share a boundary index the
later segment wins. Positive lag means X leads Y.

Randomness comes from ``numpy.random.default_rng`` (PCG64); a fixed seed
reproduces an instance bit for bit.
"""

import csv
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import DataError, UnknownScheduleError
from .series import TimeSeries

__all__ = ["STSConfig", "STSInstance", "gen_ar1", "lag_schedule", "gen_sts"]

# (start, end, lag) with 1-based inclusive bounds on the length-300 grid.
_SCHEDULES = {
    1: [(1, 50, 0), (50, 100, 5), (101, 150, 10), (151, 200, -10), (201, 250, -5), (251, 300, 0)],
    2: [
        (1, 25, 0), (26, 50, 5), (51, 75, 10), (76, 100, 15),
        (101, 125, 10), (126, 150, 5), (151, 175, -5), (176, 200, -10),
        (201, 225, -15), (226, 250, -10), (251, 275, -5), (276, 300, 0),
    ],
    3: [(1, 50, 0), (50, 100, 5), (101, 150, 10), (151, 200, 15), (201, 250, 10), (251, 300, 5)],
    4: [
        (1, 25, 0), (26, 50, 5), (51, 75, 10), (76, 100, 15),
        (101, 125, 20), (126, 150, 25), (151, 175, 30), (176, 200, 25),
        (201, 225, 20), (226, 250, 15), (251, 275, 10), (276, 300, 5),
    ],
}


@dataclass(frozen=True)
class STSConfig:
    """Parameters of one synthetic instance.

    ``f`` is the noise ratio sigma_eta / sigma_xi; larger f degrades the
    causal link between the two series.
    """

    a: float = 0.8
    b: float = 0.7
    f: float = 0.5
    sigma_xi: float = 1.0
    n: int = 300
    schedule_id: int = 1
    seed: int = 0

    def __post_init__(self):
        if not abs(self.b) < 1:
            raise DataError(f"AR coefficient must satisfy |b| < 1, got {self.b}")
        if self.f < 0:
            raise DataError(f"noise ratio must be nonnegative, got {self.f}")
        if self.n < 2:
            raise DataError(f"length must be at least 2, got {self.n}")
        if self.schedule_id not in _SCHEDULES:
            raise UnknownScheduleError(f"unknown schedule id {self.schedule_id}")


@dataclass(frozen=True)
class STSInstance:
    """Generated pair plus the true lag schedule it was built from."""

    X: TimeSeries
    Y: TimeSeries
    true_lags: np.ndarray
    config: STSConfig

    def to_csv(self, path):
        """Write columns t, X, Y, true_lag for external plotting."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "X", "Y", "true_lag"])
            for t in range(self.config.n):
                w.writerow(
                    [t, f"{self.X.values[t]:.6f}", f"{self.Y.values[t]:.6f}", int(self.true_lags[t])]
                )


def _ar1_values(rng, n, b, sigma_xi):
    x0 = rng.normal(0.0, sigma_xi / np.sqrt(1.0 - b * b))
    innov = rng.normal(0.0, sigma_xi, n - 1)
    out = np.empty(n)
    out[0] = x0
    if n > 1:
        out[1:], _ = lfilter([1.0], [1.0, -b], innov, zi=np.array([b * x0]))
    return out


def gen_ar1(n: int, b: float = 0.7, sigma_xi: float = 1.0, seed: int = 0) -> TimeSeries:
    """Stationary AR(1) realization of length n."""
    if not abs(b) < 1:
        raise DataError(f"AR coefficient must satisfy |b| < 1, got {b}")
    rng = np.random.default_rng(seed)
    return TimeSeries(_ar1_values(rng, n, b, sigma_xi), label=f"ar1(b={b})")


def lag_schedule(schedule_id: int, n: int = 300) -> np.ndarray:
    """Piecewise-constant lag values for one of the four schedules."""
    if schedule_id not in _SCHEDULES:
        raise UnknownScheduleError(f"unknown schedule id {schedule_id}")
    if n < 2:
        raise DataError(f"length must be at least 2, got {n}")
    lags = np.zeros(n, dtype=np.int64)
    for start, end, lag in _SCHEDULES[schedule_id]:
        lo = ((start - 1) * n) // 300
        hi = (end * n) // 300
        lags[lo:hi] = lag
    return lags


def gen_sts(cfg: STSConfig) -> STSInstance:
    """Generate one synthetic instance from its config."""
    rng = np.random.default_rng(cfg.seed)
    lags = lag_schedule(cfg.schedule_id, cfg.n)
    roll = max(1, int(np.abs(lags).max()))
    xfull = _ar1_values(rng, cfg.n + 2 * roll, cfg.b, cfg.sigma_xi)
    eta = rng.normal(0.0, cfg.f * cfg.sigma_xi, cfg.n)
    idx = roll + np.arange(cfg.n) - lags
    y = cfg.a * xfull[idx] + eta
    x = xfull[roll : roll + cfg.n]
    return STSInstance(
        X=TimeSeries(x, label="X"),
        Y=TimeSeries(y, label="Y"),
        true_lags=lags,
        config=cfg,
    )

"""Comparison lead-lag estimators: classic DTW and the thermal optimal path.

Both run on normalized price series and share the alignment engine's
endpoint treatment so that comparisons against the aligned-correlation
path differ only in the objective. DTW returns a hard minimal path over
price indices; the thermal estimator returns a real-valued lag profile
obtained by Boltzmann-averaging the offset over all admissible partial
paths at a given temperature.
"""

import math
from dataclasses import dataclass

import numpy as np

from .alignment import AlignmentPath, _backtrack, _dp_kernel
from .errors import DataError, NumericalUnderflowError, SeriesTooShortError
from .series import TimeSeries

__all__ = ["TOPConfig", "dtw_path", "top_lead_lag"]

# Default endpoint relaxation for both baselines; the median of the
# default alignment windows, so endpoint freedom is comparable to the
# alignment candidates' own psi = p range.
DEFAULT_BASELINE_PSI = 51


@dataclass(frozen=True)
class TOPConfig:
    """Temperature of the thermal path ensemble; must be positive."""

    temperature: float

    def __post_init__(self):
        if not self.temperature > 0:
            raise DataError(f"temperature must be positive, got {self.temperature}")


def dtw_path(x: TimeSeries, y: TimeSeries, psi: int = DEFAULT_BASELINE_PSI) -> AlignmentPath:
    """Minimal cumulative squared-difference path over price indices.

    Same monotonicity, step set, and psi endpoint boxes as the aligned
    correlation path; only the local cost differs.
    """
    n = len(x)
    if len(y) != n:
        raise DataError(f"series lengths differ: {n} vs {len(y)}")
    if n < 2:
        raise SeriesTooShortError("dtw needs at least 2 points")
    if psi < 0:
        raise DataError(f"psi must be nonnegative, got {psi}")
    psi = min(psi, n - 1)
    cost = np.square(x.values[:, None] - y.values[None, :])
    back, ti, tj, _ = _dp_kernel(cost, psi)
    if ti < 0:
        raise DataError("no feasible alignment path")
    return AlignmentPath(_backtrack(back, ti, tj))


def top_lead_lag(
    x: TimeSeries,
    y: TimeSeries,
    cfg: TOPConfig,
    psi: int = DEFAULT_BASELINE_PSI,
    renorm: str = "sum",
) -> np.ndarray:
    """Thermally averaged lag profile of length len(x).

    Local energy is e(i, j) = |x_i - y_j|. Partition weights accumulate
    over the three admissible predecessors with factor exp(-e/T); every
    cell (i, j) with i <= psi and j <= psi also receives a unit fresh-start
    injection, mirroring the alignment paths' relaxed starts. The profile
    value at time t is the weight-averaged offset j - i over the
    anti-diagonal i + j = 2t.

    Weights are renormalized per anti-diagonal (``renorm`` is "sum" or
    "max"; the constant cancels in the average). ``renorm="none"`` runs the
    raw recursion and raises :class:`NumericalUnderflowError` once the
    partition mass degenerates.
    """
    n = len(x)
    if len(y) != n:
        raise DataError(f"series lengths differ: {n} vs {len(y)}")
    if psi < 0:
        raise DataError(f"psi must be nonnegative, got {psi}")
    if renorm not in ("sum", "max", "none"):
        raise DataError(f"unknown renormalization scheme {renorm!r}")
    psi = min(psi, n - 1)
    xv = x.values
    yv = y.values
    t_inv = 1.0 / cfg.temperature

    profile = np.zeros(n)
    # Weights are stored in full-length arrays indexed by i so predecessor
    # lookups are plain shifts: on diagonal s the cell (i, s - i) reads
    # (i-1, j) and (i, j-1) from diagonal s-1 at i-1 and i, and (i-1, j-1)
    # from diagonal s-2 at i-1.
    a_prev = np.zeros(n)
    a_prev2 = np.zeros(n)
    c_prev = 1.0  # normalizer applied on the previous diagonal
    log_scale = 0.0  # log of the cumulative normalizer, for injections
    for s in range(2 * n - 1):
        lo = max(0, s - (n - 1))
        hi = min(s, n - 1)
        ii = np.arange(lo, hi + 1)
        jj = s - ii
        boltz = np.exp(-np.abs(xv[ii] - yv[jj]) * t_inv)

        u = np.zeros(ii.size)
        if s >= 1:
            u += np.where(ii - 1 >= 0, a_prev[np.maximum(ii - 1, 0)], 0.0)
            u += a_prev[ii]
        if s >= 2:
            u += np.where(ii - 1 >= 0, a_prev2[np.maximum(ii - 1, 0)], 0.0) / c_prev
        inject = (ii <= psi) & (jj <= psi)
        if inject.any():
            u[inject] += math.exp(-log_scale)
        u *= boltz

        total = u.sum()
        if not np.isfinite(total) or total <= 0.0:
            raise NumericalUnderflowError(
                f"partition mass degenerated on anti-diagonal {s}; "
                "enable renormalization"
            )
        if renorm == "sum":
            c = total
        elif renorm == "max":
            c = u.max()
        else:
            c = 1.0
        u_norm = u / c

        if s % 2 == 0:
            t = s // 2
            profile[t] = float(np.dot(jj - ii, u_norm) / u_norm.sum())

        a_prev2 = a_prev
        a_prev = np.zeros(n)
        a_prev[lo : hi + 1] = u_norm
        c_prev = c
        log_scale += math.log(c)
    return profile

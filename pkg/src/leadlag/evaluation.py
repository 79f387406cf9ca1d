"""Benchmark protocols: windowed significance test and one-step forecasts.

The significance test regresses Y(t) on lag-synchronized X within moving
windows and counts windows whose slope is significantly nonzero. It runs
on standardized (z-scored) copies of the series, so a perfectly
synchronized pair has an expected slope of corr(X_shifted, Y) rather than
the raw coupling coefficient.

The forecast test predicts Y(i+1) = a * X(i+1 - tau(i)) with
tau(i) = max(trunc(lag(i)), 0) and scores mean absolute deviation. By
default it runs in raw units, where a perfect lag path on noiseless data
gives MAD exactly 0 and on noisy data MAD converges to E|eta|; the
reporting drivers pass ``standardize=True`` to score on z-scored series
instead (the convention behind the benchmark tables).

Lag profiles are estimated on the full series before windowed evaluation,
so the forecast's lag estimate is in-sample by design.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.stats import t as student_t

from .alignment import ACConfig, aligned_correlation, lead_lag_series
from .baselines import DEFAULT_BASELINE_PSI, TOPConfig, dtw_path, top_lead_lag
from .errors import DataError, DegenerateRegressorError, EmptyOverlapError
from .series import TimeSeries, normalize
from .synthetic import STSInstance

__all__ = [
    "SignificanceReport",
    "ForecastReport",
    "synchronize",
    "ols_slope_test",
    "self_consistency",
    "forecast_mad",
    "estimate_lag_profiles",
    "forecast_reports",
    "MODEL_ACTUAL",
    "MODEL_UNSYNCED",
]

MODEL_ACTUAL = "Actual path"
MODEL_UNSYNCED = "Unsynced Path"


@dataclass(frozen=True)
class SignificanceReport:
    """Per-model outcome of the windowed slope-significance test.

    ``mean_a`` and ``std_a`` are computed over significant windows only;
    they are NaN when no window is significant.
    """

    model: str
    windows_total: int
    windows_significant: int
    mean_a: float
    std_a: float


@dataclass(frozen=True)
class ForecastReport:
    """Per-model mean absolute deviation of one-step forecasts."""

    model: str
    mad: float


def round_half_away(x):
    """Round half away from zero (2.5 -> 3, -2.5 -> -3)."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def _sync_indices(lag_profile, lo, hi, n):
    """Valid (source, target) index pairs for targets t in [lo, hi)."""
    t = np.arange(lo, hi)
    src = t - round_half_away(lag_profile[lo:hi]).astype(np.int64)
    ok = (src >= 0) & (src < n)
    return src[ok], t[ok]


def synchronize(X: TimeSeries, Y: TimeSeries, lag_profile) -> tuple[np.ndarray, np.ndarray]:
    """Pairs (X(t - round(lag(t))), Y(t)) for every in-range t."""
    n = len(X)
    lag_profile = np.asarray(lag_profile, dtype=np.float64)
    if len(Y) != n or lag_profile.size != n:
        raise DataError("series and lag profile must share one length")
    src, dst = _sync_indices(lag_profile, 0, n, n)
    if src.size == 0:
        raise EmptyOverlapError("no valid index pairs after lag synchronization")
    return X.values[src], Y.values[dst]


@lru_cache(maxsize=None)
def _t_crit(q: float, dof: int) -> float:
    return float(student_t.ppf(q, dof))


def ols_slope_test(pairs, confidence: float = 0.975, two_sided: bool = True):
    """Slope of OLS y-on-x with intercept, and its significance vs zero.

    ``confidence`` is the total confidence level of the test: the null
    "slope = 0" is rejected at alpha = 1 - confidence (split across both
    tails when ``two_sided``).
    """
    x, y = pairs
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    m = x.size
    if m < 3:
        raise DegenerateRegressorError(f"need at least 3 pairs, got {m}")
    dx = x - x.mean()
    sxx = np.dot(dx, dx)
    if sxx == 0.0:
        raise DegenerateRegressorError("regressor is constant")
    slope = np.dot(dx, y) / sxx
    resid = y - y.mean() - slope * dx
    rss = np.dot(resid, resid)
    dof = m - 2
    if rss <= 0.0:
        return float(slope), bool(slope != 0.0)
    se = np.sqrt(rss / dof / sxx)
    tstat = slope / se
    alpha = 1.0 - confidence
    if two_sided:
        return float(slope), bool(abs(tstat) > _t_crit(1.0 - alpha / 2.0, dof))
    return float(slope), bool(tstat > _t_crit(1.0 - alpha, dof))


def self_consistency(
    instance: STSInstance,
    lag_profiles,
    window: int = 100,
    confidence: float = 0.975,
    use_mean_lag: bool = False,
) -> list[SignificanceReport]:
    """Windowed significance test for every model's lag profile.

    Evaluates n - window + 1 windows that advance one step at a time.
    Within each window the series are synchronized with the window's
    per-time rounded lags (or a single window-mean lag when
    ``use_mean_lag``). Reference models "Actual path" (the true schedule)
    and "Unsynced Path" (all-zero lags) are appended unless already given.
    """
    n = instance.config.n
    if window < 3 or window > n:
        raise DataError(f"window size {window} invalid for length {n}")
    zx = normalize(instance.X).values
    zy = normalize(instance.Y).values

    profiles = {name: np.asarray(p, dtype=np.float64) for name, p in lag_profiles.items()}
    profiles.setdefault(MODEL_ACTUAL, instance.true_lags.astype(np.float64))
    profiles.setdefault(MODEL_UNSYNCED, np.zeros(n))
    for name, prof in profiles.items():
        if prof.size != n:
            raise DataError(f"profile {name!r} has length {prof.size}, expected {n}")

    total = n - window + 1
    reports = []
    for name, prof in profiles.items():
        slopes = []
        count = 0
        for s in range(total):
            lag = prof[s : s + window]
            if use_mean_lag:
                lag = np.full(window, lag.mean())
                src = np.arange(s, s + window) - round_half_away(lag).astype(np.int64)
                ok = (src >= 0) & (src < n)
                src, dst = src[ok], np.arange(s, s + window)[ok]
            else:
                src, dst = _sync_indices(prof, s, s + window, n)
            if src.size == 0:
                raise EmptyOverlapError(f"window {s} of model {name!r} has no pairs")
            slope, significant = ols_slope_test((zx[src], zy[dst]), confidence)
            if significant:
                count += 1
                slopes.append(slope)
        mean_a = float(np.mean(slopes)) if slopes else float("nan")
        std_a = float(np.std(slopes, ddof=1)) if len(slopes) > 1 else float("nan")
        reports.append(SignificanceReport(name, total, count, mean_a, std_a))
    return reports


def forecast_mad(
    instance: STSInstance,
    lag_profile,
    model: str = "",
    standardize: bool = False,
) -> ForecastReport:
    """One-step forecast error under a lag profile.

    At each i the forecast for i+1 is a * X(i+1 - tau(i)) with
    tau(i) = max(trunc(lag(i)), 0); only the lag is estimated, the
    coupling coefficient is taken as known.
    """
    n = instance.config.n
    lag_profile = np.asarray(lag_profile, dtype=np.float64)
    if lag_profile.size != n:
        raise DataError(f"profile length {lag_profile.size}, expected {n}")
    if standardize:
        xv = normalize(instance.X).values
        yv = normalize(instance.Y).values
    else:
        xv = instance.X.values
        yv = instance.Y.values
    a = instance.config.a
    i = np.arange(n - 1)
    tau = np.maximum(np.trunc(lag_profile[i]).astype(np.int64), 0)
    src = i + 1 - tau
    ok = src >= 0
    pred = a * xv[src[ok]]
    actual = yv[i[ok] + 1]
    return ForecastReport(model, float(np.mean(np.abs(pred - actual))))


def _top_label(temperature: float) -> str:
    t = f"{temperature:g}"
    return f"TOP, T={t}"


def estimate_lag_profiles(
    instance: STSInstance,
    models,
    ac_config: ACConfig = None,
    baseline_psi: int = None,
) -> dict[str, np.ndarray]:
    """Run the requested estimators on a z-scored copy of the instance.

    ``models`` are tokens: "ac", "dtw", "top:<T>", "actual", "unsynced".
    Returns a name -> length-n lag profile mapping in token order.
    """
    if ac_config is None:
        ac_config = ACConfig()
    if baseline_psi is None:
        ws = sorted(ac_config.windows)
        baseline_psi = ws[len(ws) // 2] if ws else DEFAULT_BASELINE_PSI
    n = instance.config.n
    zx = normalize(instance.X)
    zy = normalize(instance.Y)

    profiles: dict[str, np.ndarray] = {}
    for token in models:
        token = token.strip().lower()
        if token == "ac":
            res = aligned_correlation(zx, zy, ac_config)
            profiles["AC"] = lead_lag_series(res.path, n)
        elif token == "dtw":
            profiles["DTW"] = lead_lag_series(dtw_path(zx, zy, psi=baseline_psi), n)
        elif token.startswith("top:"):
            temperature = float(token.split(":", 1)[1])
            profiles[_top_label(temperature)] = top_lead_lag(
                zx, zy, TOPConfig(temperature), psi=baseline_psi
            )
        elif token == "actual":
            profiles[MODEL_ACTUAL] = instance.true_lags.astype(np.float64)
        elif token == "unsynced":
            profiles[MODEL_UNSYNCED] = np.zeros(n)
        else:
            raise DataError(f"unknown model token {token!r}")
    return profiles


def forecast_reports(instance, profiles, standardize: bool = True) -> list[ForecastReport]:
    """Forecast MAD for every profile, in mapping order."""
    return [
        forecast_mad(instance, prof, model=name, standardize=standardize)
        for name, prof in profiles.items()
    ]

"""Aligned-correlation engine.

Computes, per window size p, the alignment path over the two return
series that minimizes the cumulative local cost

    CR(i, j, p) = 2 * (1 - cos(window of rx at i, window of ry at j)),

then picks among the per-window candidate paths (plus the pure diagonal,
by default) the one with the smallest global score

    2 * (1 - cos(rx along path, ry along path)),

and reports the aligned correlation, its distance transform
``sqrt(2 * (1 - rho))``, and lead-lag statistics of the winning path.

Cumulative CR totals are never compared across different p: intermediate
window totals are incommensurable, so candidate selection uses only the
global score above.

Index conventions (0-based): a path is a monotone sequence of return-index
pairs (p_l, q_l) with steps in {(1,0), (0,1), (1,1)}. The endpoint
relaxation ``psi`` is the number of leading/trailing return indices a path
may skip on each series: starts satisfy p_1 <= psi and q_1 <= psi, ends
p_L >= m-1-psi and q_L >= m-1-psi, where m is the return length. psi = 0
is the classic fixed-endpoint boundary. Lags are q_l - p_l, positive when
the second series' index runs ahead of the first's (the first leads).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import DataError, SeriesTooShortError, ZeroNormError
from .series import PaddedReturnSeries, ReturnSeries, TimeSeries, returns

__all__ = [
    "ACConfig",
    "AlignmentPath",
    "LeadLagProfile",
    "ACResult",
    "cr_cost",
    "cr_cost_matrix",
    "optimal_path_for_window",
    "global_path_score",
    "aligned_correlation",
    "lead_lag_series",
]

IDENTITY = "identity"


@dataclass(frozen=True)
class ACConfig:
    """Parameters of the aligned-correlation computation.

    ``psi=None`` means each window size p uses psi = p for its own path
    computation. ``windows`` may be empty if the identity candidate is
    enabled, in which case the measure degenerates to the zero-lag
    uncentered return correlation.
    """

    windows: tuple = (25, 51, 101)
    psi: int | None = None
    include_identity_candidate: bool = True

    def __post_init__(self):
        object.__setattr__(self, "windows", tuple(int(p) for p in self.windows))
        if not self.windows and not self.include_identity_candidate:
            raise DataError("no candidate paths: empty windows and identity disabled")
        for p in self.windows:
            if p < 3 or p % 2 == 0:
                raise DataError(f"window sizes must be odd and >= 3, got {p}")
        if self.psi is not None and self.psi < 0:
            raise DataError(f"psi must be nonnegative, got {self.psi}")

    def validate_for_length(self, m: int):
        """Check windows against a return-series length m."""
        for p in self.windows:
            if p > m:
                raise SeriesTooShortError(
                    f"window {p} exceeds return length {m}; series too short"
                )

    def psi_for(self, p: int, m: int) -> int:
        """Effective endpoint relaxation for window p, clamped to m - 1."""
        psi = p if self.psi is None else self.psi
        return min(psi, m - 1)


@dataclass(frozen=True)
class AlignmentPath:
    """Monotone sequence of index pairs with unit steps."""

    pairs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pairs, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise DataError(f"path must be an (L, 2) index array, got shape {arr.shape}")
        steps = np.diff(arr, axis=0)
        if steps.size and not (
            np.all(steps >= 0) and np.all(steps <= 1) and np.all(steps.sum(axis=1) >= 1)
        ):
            raise DataError("path steps must be (1,0), (0,1) or (1,1)")
        object.__setattr__(self, "pairs", arr)

    @classmethod
    def identity(cls, m: int) -> "AlignmentPath":
        idx = np.arange(m, dtype=np.int64)
        return cls(np.column_stack([idx, idx]))

    @property
    def p_indices(self) -> np.ndarray:
        return self.pairs[:, 0]

    @property
    def q_indices(self) -> np.ndarray:
        return self.pairs[:, 1]

    @property
    def lags(self) -> np.ndarray:
        return self.pairs[:, 1] - self.pairs[:, 0]

    def __len__(self):
        return self.pairs.shape[0]

    def is_feasible(self, m: int, psi: int) -> bool:
        """Endpoint check for return length m and relaxation psi (0-based)."""
        (p1, q1), (pl, ql) = self.pairs[0], self.pairs[-1]
        if self.pairs.max() >= m or self.pairs.min() < 0:
            return False
        return (
            p1 <= psi and q1 <= psi and pl >= m - 1 - psi and ql >= m - 1 - psi
        )


@dataclass(frozen=True)
class LeadLagProfile:
    """Lag statistics along an alignment path."""

    lags: np.ndarray
    average_lag: float
    nonzero_ratio: float

    @classmethod
    def from_path(cls, path: AlignmentPath) -> "LeadLagProfile":
        lags = path.lags
        return cls(
            lags=lags,
            average_lag=float(lags.mean()),
            nonzero_ratio=float(np.count_nonzero(lags) / lags.size),
        )


@dataclass(frozen=True)
class ACResult:
    """Winning path and the aligned-correlation summary derived from it.

    ``chosen_window`` is the window size p that produced the winner, or the
    string ``"identity"`` for the pure diagonal candidate.
    ``candidate_scores`` keeps every candidate's global score for
    diagnostics; selection used exactly these numbers.
    """

    path: AlignmentPath
    aligned_correlation: float
    ac_distance: float
    chosen_window: int | str
    profile: LeadLagProfile
    candidate_scores: dict = field(default_factory=dict, compare=False)


@njit(cache=True)
def _cr_matrix_kernel(rxp, ryp, m, p):
    nx = np.empty(m)
    ny = np.empty(m)
    for i in range(m):
        sx = 0.0
        sy = 0.0
        for k in range(p):
            sx += rxp[i + k] * rxp[i + k]
            sy += ryp[i + k] * ryp[i + k]
        nx[i] = np.sqrt(sx)
        ny[i] = np.sqrt(sy)
    out = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            if nx[i] == 0.0 or ny[j] == 0.0:
                out[i, j] = 2.0
            else:
                d = 0.0
                for k in range(p):
                    d += rxp[i + k] * ryp[j + k]
                c = d / (nx[i] * ny[j])
                if c > 1.0:
                    c = 1.0
                elif c < -1.0:
                    c = -1.0
                out[i, j] = 2.0 * (1.0 - c)
    return out


@njit(cache=True)
def _dp_kernel(cost, psi):
    """Minimum-cost path DP with box-relaxed endpoints.

    Tie-breaking: prefer predecessor (1,1), then (1,0), then (0,1); a fresh
    start inside the psi-box only when strictly cheaper. Among equal-cost
    terminal cells prefer the smallest i+j, then the smallest |i-j|, then
    the smallest i.
    """
    m1, m2 = cost.shape
    inf = np.inf
    dist = np.full((m1, m2), inf)
    back = np.full((m1, m2), -1, dtype=np.int8)
    for i in range(m1):
        for j in range(m2):
            best = inf
            move = -1
            if i > 0 and j > 0 and dist[i - 1, j - 1] < best:
                best = dist[i - 1, j - 1]
                move = 0
            if i > 0 and dist[i - 1, j] < best:
                best = dist[i - 1, j]
                move = 1
            if j > 0 and dist[i, j - 1] < best:
                best = dist[i, j - 1]
                move = 2
            if i <= psi and j <= psi and 0.0 < best:
                best = 0.0
                move = 3
            if move >= 0:
                dist[i, j] = best + cost[i, j]
                back[i, j] = move
    lo_i = max(m1 - 1 - psi, 0)
    lo_j = max(m2 - 1 - psi, 0)
    ti = -1
    tj = -1
    tbest = inf
    for i in range(lo_i, m1):
        for j in range(lo_j, m2):
            v = dist[i, j]
            if v < tbest:
                tbest = v
                ti = i
                tj = j
            elif v == tbest and ti >= 0:
                take = False
                if i + j < ti + tj:
                    take = True
                elif i + j == ti + tj:
                    if abs(i - j) < abs(ti - tj):
                        take = True
                    elif abs(i - j) == abs(ti - tj) and i < ti:
                        take = True
                if take:
                    ti = i
                    tj = j
    return back, ti, tj, tbest


def _backtrack(back, ti, tj) -> np.ndarray:
    cells = [(ti, tj)]
    i, j = ti, tj
    while back[i, j] != 3:
        move = back[i, j]
        if move == 0:
            i, j = i - 1, j - 1
        elif move == 1:
            i = i - 1
        elif move == 2:
            j = j - 1
        else:
            raise RuntimeError("backtrack hit an unreachable cell")
        cells.append((i, j))
    cells.reverse()
    return np.asarray(cells, dtype=np.int64)


def cr_cost_matrix(rx: ReturnSeries, ry: ReturnSeries, p: int) -> np.ndarray:
    """All local costs CR(i, j, p) as an (m, m) matrix."""
    m = len(rx)
    if len(ry) != m:
        raise DataError("return series must have equal length")
    if p < 1 or p % 2 == 0:
        raise DataError(f"window size must be odd and positive, got {p}")
    if p > m:
        raise SeriesTooShortError(f"window {p} exceeds return length {m}")
    rxp = PaddedReturnSeries.for_window(rx, p)
    ryp = PaddedReturnSeries.for_window(ry, p)
    return _cr_matrix_kernel(rxp.padded, ryp.padded, m, p)


def cr_cost(rx: PaddedReturnSeries, ry: PaddedReturnSeries, i: int, j: int, p: int) -> float:
    """Local cost at one cell: 2 * (1 - cosine of the centered windows).

    Windows run over offsets -(p//2)..p//2; positions outside the unpadded
    range read zero. An all-zero window gets the neutral cost 2.0 (cosine
    treated as 0) so border cells stay finite without being privileged.
    """
    if p < 1 or p % 2 == 0:
        raise DataError(f"window size must be odd and positive, got {p}")
    if rx.pad != p // 2 or ry.pad != p // 2:
        raise DataError("padding does not match window size")
    m = len(rx.inner)
    if not (0 <= i < m and 0 <= j < len(ry.inner)):
        raise DataError(f"indices ({i}, {j}) out of range for return length {m}")
    u = rx.padded[i : i + p]
    v = ry.padded[j : j + p]
    su = np.dot(u, u)
    sv = np.dot(v, v)
    if su == 0.0 or sv == 0.0:
        return 2.0
    if np.array_equal(u, v):
        return 0.0
    c = min(1.0, max(-1.0, np.dot(u, v) / math.sqrt(su * sv)))
    return 2.0 * (1.0 - c)


def optimal_path_for_window(
    rx: ReturnSeries, ry: ReturnSeries, p: int, psi: int
) -> AlignmentPath:
    """DP-exact minimizer of cumulative CR over all feasible paths."""
    m = len(rx)
    if psi < 0:
        raise DataError(f"psi must be nonnegative, got {psi}")
    psi = min(psi, m - 1)
    cost = cr_cost_matrix(rx, ry, p)
    back, ti, tj, _ = _dp_kernel(cost, psi)
    if ti < 0:
        raise DataError("no feasible alignment path")
    return AlignmentPath(_backtrack(back, ti, tj))


def global_path_score(rx: ReturnSeries, ry: ReturnSeries, path: AlignmentPath) -> float:
    """2 * (1 - cosine of the two return vectors read along the path)."""
    u = rx.values[path.p_indices]
    v = ry.values[path.q_indices]
    su = np.dot(u, u)
    sv = np.dot(v, v)
    if su == 0.0 or sv == 0.0:
        raise ZeroNormError("aligned return vector has zero norm")
    if np.array_equal(u, v):
        return 0.0
    c = min(1.0, max(-1.0, np.dot(u, v) / math.sqrt(su * sv)))
    return 2.0 * (1.0 - c)


def aligned_correlation(x: TimeSeries, y: TimeSeries, cfg: ACConfig = None) -> ACResult:
    """Full aligned-correlation computation between two equal-length series.

    Runs the per-window DP for every configured window size, adds the pure
    diagonal candidate unless disabled, and selects the candidate with the
    smallest global score (ties go to the earliest candidate in the order
    identity, then windows as configured).
    """
    if cfg is None:
        cfg = ACConfig()
    if len(x) != len(y):
        raise DataError(f"series lengths differ: {len(x)} vs {len(y)}")
    rx = returns(x)
    ry = returns(y)
    m = len(rx)
    cfg.validate_for_length(m)

    candidates: list[tuple[int | str, AlignmentPath]] = []
    if cfg.include_identity_candidate:
        candidates.append((IDENTITY, AlignmentPath.identity(m)))
    for p in cfg.windows:
        candidates.append((p, optimal_path_for_window(rx, ry, p, cfg.psi_for(p, m))))

    scores = {}
    best_key = None
    best_path = None
    best_score = math.inf
    for key, path in candidates:
        score = global_path_score(rx, ry, path)
        scores[key] = score
        if score < best_score:
            best_key, best_path, best_score = key, path, score

    corr = 1.0 - best_score / 2.0
    return ACResult(
        path=best_path,
        aligned_correlation=corr,
        ac_distance=math.sqrt(max(0.0, best_score)),
        chosen_window=best_key,
        profile=LeadLagProfile.from_path(best_path),
        candidate_scores=scores,
    )


def lead_lag_series(path: AlignmentPath, n: int) -> np.ndarray:
    """Per-time-index lag estimate of length n.

    The lag q_l - p_l at a path entry describes by how much the second
    series at index q_l trails the first, so it is booked at t = q_l:
    index t gets the mean of (q_l - p_l) over all path entries with
    q_l = t. Indices before/after the covered range carry the nearest
    covered value.
    """
    sums = np.zeros(n)
    counts = np.zeros(n)
    np.add.at(sums, path.q_indices, path.lags.astype(np.float64))
    np.add.at(counts, path.q_indices, 1.0)
    covered = counts > 0
    prof = np.zeros(n)
    prof[covered] = sums[covered] / counts[covered]
    idx = np.flatnonzero(covered)
    first, last = idx[0], idx[-1]
    prof[:first] = prof[first]
    prof[last + 1 :] = prof[last]
    return prof

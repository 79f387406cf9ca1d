"""Market-topology pipeline over pairwise aligned-correlation distances.

Builds the symmetric distance matrix for a panel of equal-length series,
audits the triangle inequality empirically (a report, never a gate),
extracts the minimum spanning tree with deterministic tie-breaking, and
computes four summary metrics: mean off-diagonal dissimilarity, mean MST
edge weight, mean tree-path length over ordered node pairs, and the count
of non-leaf tree nodes.
"""

from dataclasses import dataclass

import numpy as np

from .alignment import ACConfig, aligned_correlation
from .errors import DataError, LeadLagError
from .series import pearson, returns

__all__ = [
    "PairStats",
    "DistanceMatrix",
    "MSTree",
    "NetworkMetrics",
    "TriangleAudit",
    "build_distance_matrix",
    "triangle_audit",
    "minimum_spanning_tree",
    "network_metrics",
]


@dataclass(frozen=True)
class PairStats:
    """Per-pair diagnostics mirroring the distance matrix entries."""

    x_label: str
    y_label: str
    ac_distance: float
    aligned_correlation: float
    zero_lag_correlation: float
    average_lag: float
    nonzero_ratio: float
    chosen_window: int | str


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative distances with zero diagonal, plus pair stats."""

    labels: list
    d: np.ndarray
    pair_stats: list

    def __post_init__(self):
        d = np.asarray(self.d, dtype=np.float64)
        n = len(self.labels)
        if d.shape != (n, n):
            raise DataError(f"distance matrix shape {d.shape} does not match {n} labels")
        object.__setattr__(self, "d", d)

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class MSTree:
    """Spanning tree edges as (i, j, weight) with i < j, in selection order."""

    edges: list

    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))


@dataclass(frozen=True)
class NetworkMetrics:
    mean_dissimilarity: float
    normalized_tree_length: float
    characterized_path_length: float
    non_leaf_nodes: int


@dataclass(frozen=True)
class TriangleAudit:
    """Count of unordered triples violating the triangle inequality."""

    violations: int
    worst_triple: tuple | None
    worst_excess: float


def build_distance_matrix(panel, cfg: ACConfig = None) -> DistanceMatrix:
    """Pairwise aligned-correlation distances over a panel of series.

    Every pair uses the same configuration. Pair stats record the distance,
    the aligned correlation, the centered zero-lag correlation of the two
    return series, the path's average lag and nonzero-lag ratio, and which
    window produced the winning path. Any failing pair aborts the build
    with a list of the offending pairs.
    """
    if cfg is None:
        cfg = ACConfig()
    if len(panel) < 2:
        raise DataError("panel needs at least 2 series")
    n = len(panel[0])
    for s in panel:
        if len(s) != n:
            raise DataError("panel series must have equal length")
    labels = [s.label or f"s{i}" for i, s in enumerate(panel)]

    size = len(panel)
    d = np.zeros((size, size))
    stats = []
    failures = []
    for i in range(size):
        for j in range(i + 1, size):
            try:
                res = aligned_correlation(panel[i], panel[j], cfg)
                zero_lag = pearson(returns(panel[i]).values, returns(panel[j]).values)
            except LeadLagError as exc:
                failures.append((labels[i], labels[j], str(exc)))
                continue
            d[i, j] = d[j, i] = res.ac_distance
            stats.append(
                PairStats(
                    x_label=labels[i],
                    y_label=labels[j],
                    ac_distance=res.ac_distance,
                    aligned_correlation=res.aligned_correlation,
                    zero_lag_correlation=zero_lag,
                    average_lag=res.profile.average_lag,
                    nonzero_ratio=res.profile.nonzero_ratio,
                    chosen_window=res.chosen_window,
                )
            )
    if failures:
        detail = "; ".join(f"{a}~{b}: {msg}" for a, b, msg in failures)
        raise DataError(f"{len(failures)} pair(s) failed: {detail}")
    return DistanceMatrix(labels=labels, d=d, pair_stats=stats)


def triangle_audit(m: DistanceMatrix, tol: float = 1e-12) -> TriangleAudit:
    """Count unordered triples where one side exceeds the other two's sum."""
    d = m.d
    n = m.size
    violations = 0
    worst = None
    worst_excess = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ab, ac, bc = d[i, j], d[i, k], d[j, k]
                excess = max(ab - (ac + bc), ac - (ab + bc), bc - (ab + ac))
                if excess > tol:
                    violations += 1
                    if excess > worst_excess:
                        worst_excess = excess
                        worst = (i, j, k)
    return TriangleAudit(violations=violations, worst_triple=worst, worst_excess=float(worst_excess))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def minimum_spanning_tree(m: DistanceMatrix) -> MSTree:
    """Kruskal's algorithm; ties broken by (weight, i, j) edge order."""
    n = m.size
    if not np.all(np.isfinite(m.d)):
        raise DataError("distance matrix contains non-finite entries")
    edges = sorted(
        (m.d[i, j], i, j) for i in range(n) for j in range(i + 1, n)
    )
    uf = _UnionFind(n)
    tree = []
    for w, i, j in edges:
        if uf.union(i, j):
            tree.append((i, j, float(w)))
            if len(tree) == n - 1:
                break
    if len(tree) != n - 1:
        raise DataError("distance matrix is not connected")
    return MSTree(edges=tree)


def _tree_path_lengths(n, edges):
    """All-pairs path lengths within the tree (paths are unique)."""
    adj = [[] for _ in range(n)]
    for i, j, w in edges:
        adj[i].append((j, w))
        adj[j].append((i, w))
    lengths = np.zeros((n, n))
    for root in range(n):
        stack = [root]
        seen = [False] * n
        seen[root] = True
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    lengths[root, v] = lengths[root, u] + w
                    stack.append(v)
    return lengths


def network_metrics(m: DistanceMatrix, t: MSTree) -> NetworkMetrics:
    """The four tree-evaluation metrics for a distance matrix and its MST."""
    n = m.size
    iu = np.triu_indices(n, k=1)
    mean_dissimilarity = float(m.d[iu].mean())
    normalized_tree_length = t.total_weight() / (n - 1)
    lengths = _tree_path_lengths(n, t.edges)
    characterized_path_length = float(lengths.sum() / (n * (n - 1)))
    degree = np.zeros(n, dtype=np.int64)
    for i, j, _ in t.edges:
        degree[i] += 1
        degree[j] += 1
    non_leaf = int(np.count_nonzero(degree >= 2))
    return NetworkMetrics(
        mean_dissimilarity=mean_dissimilarity,
        normalized_tree_length=normalized_tree_length,
        characterized_path_length=characterized_path_length,
        non_leaf_nodes=non_leaf,
    )

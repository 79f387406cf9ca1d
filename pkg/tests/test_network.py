import numpy as np
import pytest

from leadlag import (
    ACConfig,
    DataError,
    DistanceMatrix,
    TimeSeries,
    build_distance_matrix,
    gen_ar1,
    minimum_spanning_tree,
    network_metrics,
    normalize,
    triangle_audit,
)

from conftest import make_coupled_panel
from oracles import brute_force_mst_weight, floyd_warshall_tree_paths


def matrix_from(d, labels=None):
    d = np.asarray(d, dtype=np.float64)
    labels = labels or [f"n{i}" for i in range(d.shape[0])]
    return DistanceMatrix(labels=labels, d=d, pair_stats=[])


def random_metric_matrix(rng, n):
    # distances of random points in the plane: a true metric
    pts = rng.normal(0, 1, (n, 2))
    d = np.sqrt(np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=2))
    return d


class TestBuildDistanceMatrix:
    def test_identical_series_zero(self, rng):
        base = normalize(TimeSeries(rng.normal(0, 1, 60), label="a"))
        panel = [base, TimeSeries(base.values.copy(), label="b"),
                 TimeSeries(base.values.copy(), label="c")]
        m = build_distance_matrix(panel, ACConfig(windows=(5,)))
        assert np.all(m.d == 0.0)

    def test_two_series_symmetric(self, rng):
        panel = [
            normalize(TimeSeries(rng.normal(0, 1, 60), label="a")),
            normalize(TimeSeries(rng.normal(0, 1, 60), label="b")),
        ]
        m = build_distance_matrix(panel, ACConfig(windows=(5, 9)))
        assert len(m.pair_stats) == 1
        assert m.d[0, 1] == m.d[1, 0] == m.pair_stats[0].ac_distance
        assert m.d[0, 0] == m.d[1, 1] == 0.0

    def test_pair_stats_property(self):
        panel = [
            normalize(TimeSeries(gen_ar1(80, seed=200 + k).values, label=f"s{k}"))
            for k in range(6)
        ]
        m = build_distance_matrix(panel, ACConfig(windows=(9, 15)))
        assert len(m.pair_stats) == 15
        for st in m.pair_stats:
            assert st.aligned_correlation >= st.zero_lag_correlation - 1e-9
            assert 0.0 <= st.nonzero_ratio <= 1.0

    def test_unequal_lengths_rejected(self, rng):
        panel = [
            normalize(TimeSeries(rng.normal(0, 1, 60))),
            normalize(TimeSeries(rng.normal(0, 1, 61))),
        ]
        with pytest.raises(DataError):
            build_distance_matrix(panel, ACConfig(windows=(5,)))


class TestTriangleAudit:
    def test_equilateral_clean(self):
        audit = triangle_audit(matrix_from([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
        assert audit.violations == 0
        assert audit.worst_triple is None

    def test_constructed_violation(self):
        d = np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]])
        audit = triangle_audit(matrix_from(d))
        assert audit.violations == 1
        assert audit.worst_triple == (0, 1, 2)
        assert audit.worst_excess == pytest.approx(1.0)

    def test_ac_matrices_usually_clean(self):
        panel = make_coupled_panel(8, 80, coupling=0.5, seed=400)
        m = build_distance_matrix(panel, ACConfig(windows=(9, 15)))
        audit = triangle_audit(m)
        assert audit.violations == 0


class TestMST:
    def test_three_node_example(self):
        m = matrix_from([[0, 1, 2], [1, 0, 3], [2, 3, 0]], labels=["A", "B", "C"])
        tree = minimum_spanning_tree(m)
        assert [(i, j) for i, j, _ in tree.edges] == [(0, 1), (0, 2)]
        assert tree.total_weight() == pytest.approx(3.0)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(500 + seed)
        n = int(rng.integers(3, 7))
        d = random_metric_matrix(rng, n)
        tree = minimum_spanning_tree(matrix_from(d))
        assert len(tree.edges) == n - 1
        assert tree.total_weight() == pytest.approx(brute_force_mst_weight(d), abs=1e-9)

    def test_tie_break_lexicographic(self):
        n = 5
        d = np.ones((n, n)) - np.eye(n)
        tree = minimum_spanning_tree(matrix_from(d))
        assert [(i, j) for i, j, _ in tree.edges] == [(0, 1), (0, 2), (0, 3), (0, 4)]

    def test_permutation_equivariance(self, rng):
        n = 6
        d = random_metric_matrix(rng, n)
        perm = rng.permutation(n)
        dp = d[np.ix_(perm, perm)]
        edges = {frozenset((i, j)) for i, j, _ in minimum_spanning_tree(matrix_from(d)).edges}
        edges_p = {
            frozenset((int(perm[i]), int(perm[j])))
            for i, j, _ in minimum_spanning_tree(matrix_from(dp)).edges
        }
        assert edges == edges_p


class TestNetworkMetrics:
    def test_two_nodes(self):
        m = matrix_from([[0.0, 0.7], [0.7, 0.0]])
        tree = minimum_spanning_tree(m)
        met = network_metrics(m, tree)
        assert met.mean_dissimilarity == pytest.approx(0.7)
        assert met.normalized_tree_length == pytest.approx(0.7)
        assert met.characterized_path_length == pytest.approx(0.7)
        assert met.non_leaf_nodes == 0

    def test_star_and_path_non_leaf(self):
        # star: node 0 close to everyone
        n = 5
        d = np.full((n, n), 10.0)
        np.fill_diagonal(d, 0.0)
        d[0, 1:] = d[1:, 0] = 1.0
        met = network_metrics(matrix_from(d), minimum_spanning_tree(matrix_from(d)))
        assert met.non_leaf_nodes == 1
        # path: chain 0-1-2-3-4
        d = np.full((n, n), 50.0)
        for i in range(n):
            for j in range(n):
                d[i, j] = abs(i - j) ** 1.5
        met = network_metrics(matrix_from(d), minimum_spanning_tree(matrix_from(d)))
        assert met.non_leaf_nodes == 3

    @pytest.mark.parametrize("seed", range(6))
    def test_cpl_against_floyd_warshall(self, seed):
        rng = np.random.default_rng(600 + seed)
        n = int(rng.integers(4, 9))
        d = random_metric_matrix(rng, n)
        m = matrix_from(d)
        tree = minimum_spanning_tree(m)
        met = network_metrics(m, tree)
        oracle = floyd_warshall_tree_paths(n, tree.edges)
        assert met.characterized_path_length == pytest.approx(
            oracle.sum() / (n * (n - 1)), abs=1e-9
        )
        # ordered-pair sum is twice the unordered sum
        iu = np.triu_indices(n, k=1)
        assert oracle.sum() == pytest.approx(2.0 * oracle[iu].sum(), abs=1e-9)

    def test_ntl_times_edges_is_total_weight(self, rng):
        d = random_metric_matrix(rng, 7)
        m = matrix_from(d)
        tree = minimum_spanning_tree(m)
        met = network_metrics(m, tree)
        assert met.normalized_tree_length * 6 == pytest.approx(tree.total_weight(), abs=1e-12)

    def test_constant_shift_invariance(self, rng):
        n = 6
        d = random_metric_matrix(rng, n)
        m = matrix_from(d)
        eps = 0.37
        d2 = d + eps
        np.fill_diagonal(d2, 0.0)
        m2 = matrix_from(d2)
        t1 = minimum_spanning_tree(m)
        t2 = minimum_spanning_tree(m2)
        assert {(i, j) for i, j, _ in t1.edges} == {(i, j) for i, j, _ in t2.edges}
        met1 = network_metrics(m, t1)
        met2 = network_metrics(m2, t2)
        assert met2.mean_dissimilarity == pytest.approx(met1.mean_dissimilarity + eps, abs=1e-12)

    def test_non_leaf_bounds(self, rng):
        for seed in range(8):
            r = np.random.default_rng(700 + seed)
            n = int(r.integers(3, 9))
            d = random_metric_matrix(r, n)
            m = matrix_from(d)
            met = network_metrics(m, minimum_spanning_tree(m))
            assert 1 <= met.non_leaf_nodes <= n - 2

    def test_coupling_contracts_metrics(self):
        loose = make_coupled_panel(10, 100, coupling=0.35, seed=801)
        tight = make_coupled_panel(10, 100, coupling=0.85, seed=802)
        cfg = ACConfig(windows=(9, 15))
        out = []
        for panel in (loose, tight):
            m = build_distance_matrix(panel, cfg)
            met = network_metrics(m, minimum_spanning_tree(m))
            out.append(met)
        assert out[1].mean_dissimilarity < out[0].mean_dissimilarity
        assert out[1].normalized_tree_length < out[0].normalized_tree_length
        assert out[1].characterized_path_length < out[0].characterized_path_length

"""Independent brute-force oracles used by the test suite.

Everything here deliberately avoids the library's own algorithms:
path enumeration is a plain recursion over the step set, spanning trees
are enumerated from edge subsets, and tree path lengths come from
Floyd-Warshall.
"""

from itertools import combinations

import numpy as np


def enumerate_min_path_cost(cost, psi):
    """Minimum cumulative cost over every feasible path, by enumeration.

    Feasible paths start at any cell (i, j) with i <= psi and j <= psi,
    move by (1,0), (0,1) or (1,1), and may stop at any cell with
    i >= m1-1-psi and j >= m2-1-psi.
    """
    m1, m2 = cost.shape
    lo_i = max(m1 - 1 - psi, 0)
    lo_j = max(m2 - 1 - psi, 0)
    best = [np.inf]

    def rec(i, j, acc):
        acc = acc + cost[i, j]
        if i >= lo_i and j >= lo_j and acc < best[0]:
            best[0] = acc
        if i + 1 < m1 and j + 1 < m2:
            rec(i + 1, j + 1, acc)
        if i + 1 < m1:
            rec(i + 1, j, acc)
        if j + 1 < m2:
            rec(i, j + 1, acc)

    for si in range(min(psi, m1 - 1) + 1):
        for sj in range(min(psi, m2 - 1) + 1):
            rec(si, sj, 0.0)
    return best[0]


def count_feasible_paths(m, psi):
    """Number of distinct feasible paths on an m x m grid."""
    lo = max(m - 1 - psi, 0)
    total = [0]

    def rec(i, j):
        if i >= lo and j >= lo:
            total[0] += 1
        if i + 1 < m and j + 1 < m:
            rec(i + 1, j + 1)
        if i + 1 < m:
            rec(i + 1, j)
        if j + 1 < m:
            rec(i, j + 1)

    for si in range(min(psi, m - 1) + 1):
        for sj in range(min(psi, m - 1) + 1):
            rec(si, sj)
    return total[0]


def delannoy(a, b):
    """Central Delannoy-style count of monotone 3-step lattice paths."""
    table = np.zeros((a + 1, b + 1), dtype=np.int64)
    table[0, :] = 1
    table[:, 0] = 1
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            table[i, j] = table[i - 1, j] + table[i, j - 1] + table[i - 1, j - 1]
    return int(table[a, b])


def brute_force_mst_weight(d):
    """Minimum spanning-tree weight by enumerating edge subsets."""
    n = d.shape[0]
    all_edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    best = np.inf
    for subset in combinations(all_edges, n - 1):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                a = parent[a]
            return a

        ok = True
        for i, j in subset:
            ri, rj = find(i), find(j)
            if ri == rj:
                ok = False
                break
            parent[rj] = ri
        if ok:
            w = sum(d[i, j] for i, j in subset)
            best = min(best, w)
    return best


def floyd_warshall_tree_paths(n, edges):
    """All-pairs shortest path lengths over the tree's weighted edges."""
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for i, j, w in edges:
        dist[i, j] = dist[j, i] = w
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = dist[i, k] + dist[k, j]
                if via < dist[i, j]:
                    dist[i, j] = via
    return dist

"""Independent brute-force oracles the test suite checks the package against.

Every oracle here deliberately takes the dumbest correct route: full O(n^2)
pair scans, breadth-first search, Prim's algorithm, greedy agglomeration
that rescans cluster distances from the original matrix each step. None of
them share code with the production paths they verify (the one exception,
noted on naive_linkage, is the Ward recurrence, which *is* the definition
used).
"""

from __future__ import annotations

import heapq

import numpy as np

from geohac.linkage import lance_williams_update
from geohac.metrics import PointSet, pair_distances


def brute_force_pairs(ps: PointSet, h_max: float):
    """All pairs within h_max by scanning every (i, j), i < j."""
    n = ps.n
    i, j = np.triu_indices(n, k=1)
    d = pair_distances(ps.coords, ps.metric, i, j)
    keep = d <= h_max
    return i[keep].astype(np.int64), j[keep].astype(np.int64), d[keep]


def bfs_components(n: int, edges_i, edges_j) -> np.ndarray:
    """Component id per node via breadth-first search, numbered by smallest member."""
    adj = [[] for _ in range(n)]
    for a, b in zip(edges_i, edges_j):
        adj[int(a)].append(int(b))
        adj[int(b)].append(int(a))
    comp = np.full(n, -1, dtype=np.int64)
    next_id = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        queue = [start]
        comp[start] = next_id
        while queue:
            u = queue.pop()
            for v in adj[u]:
                if comp[v] < 0:
                    comp[v] = next_id
                    queue.append(v)
        next_id += 1
    return comp


def prim_mst_weight(n: int, edges) -> float:
    """Total MST weight via Prim's algorithm with a binary heap."""
    adj = [[] for _ in range(n)]
    for u, v, w in edges:
        adj[int(u)].append((float(w), int(v)))
        adj[int(v)].append((float(w), int(u)))
    seen = [False] * n
    total = 0.0
    taken = 0
    heap = [(0.0, 0)]
    while heap and taken < n:
        w, u = heapq.heappop(heap)
        if seen[u]:
            continue
        seen[u] = True
        taken += 1
        total += w
        for item in adj[u]:
            if not seen[item[1]]:
                heapq.heappush(heap, item)
    if taken != n:
        raise ValueError("graph is disconnected")
    return total


def single_linkage_merge_heights(square: np.ndarray) -> np.ndarray:
    """Greedy single-linkage merge heights from a square distance matrix."""
    return naive_linkage_heights(square, "single")


def naive_linkage_heights(square: np.ndarray, method: str) -> np.ndarray:
    labels, heights = naive_linkage_cuts(square, method)
    return heights


def naive_linkage_cuts(square: np.ndarray, method: str):
    """Greedy agglomeration that rescans inter-cluster distances each step.

    single/complete/average distances are recomputed from the ORIGINAL
    matrix at every step (min/max/mean over cross pairs), so they test the
    Lance-Williams recurrences rather than reusing them. Ward has no
    definition in terms of raw pairwise distances alone, so its row updates
    use the recurrence; the recurrence itself is pinned by an explicit
    coordinate-based test elsewhere.

    Returns (merge_member_sets, merge_heights): after each merge t, the two
    merged clusters' member frozensets and the merge height.
    """
    c = square.shape[0]
    original = square.astype(np.float64)
    cur = original.copy()
    np.fill_diagonal(cur, np.inf)
    clusters: dict[int, list[int]] = {i: [i] for i in range(c)}
    alive = sorted(clusters)
    steps = []
    heights = np.empty(c - 1)
    for t in range(c - 1):
        best = (np.inf, None, None)
        for ai in range(len(alive)):
            a = alive[ai]
            for b in alive[ai + 1 :]:
                d = cur[a, b]
                if d < best[0]:
                    best = (d, a, b)
        d, a, b = best
        steps.append((frozenset(clusters[a]), frozenset(clusters[b])))
        heights[t] = d
        merged = clusters[a] + clusters[b]
        sa, sb = len(clusters[a]), len(clusters[b])
        for k in alive:
            if k in (a, b):
                continue
            if method == "single":
                nd = original[np.ix_(merged, clusters[k])].min()
            elif method == "complete":
                nd = original[np.ix_(merged, clusters[k])].max()
            elif method == "average":
                nd = original[np.ix_(merged, clusters[k])].mean()
            elif method == "ward":
                nd = lance_williams_update(
                    "ward", cur[a, k], cur[b, k], d, sa, sb, len(clusters[k])
                )
            else:
                raise ValueError(method)
            cur[a, k] = cur[k, a] = nd
        clusters[a] = merged
        del clusters[b]
        alive.remove(b)
        cur[b, :] = np.inf
        cur[:, b] = np.inf
    return steps, heights


def naive_linkage_labels(square: np.ndarray, method: str, h: float) -> np.ndarray:
    """Partition at height h from the greedy agglomeration (inclusive cut)."""
    c = square.shape[0]
    steps, heights = naive_linkage_cuts(square, method)
    parent = list(range(c))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for (left, right), height in zip(steps, heights):
        if height <= h:
            parent[find(next(iter(left)))] = find(next(iter(right)))
    return np.array([find(i) for i in range(c)])


def pair_counting_ari(a, b) -> float:
    """ARI via explicit classification of every point pair."""
    a = np.asarray(a)
    b = np.asarray(b)
    n = a.size
    both = same_a = same_b = 0
    for i in range(n):
        for j in range(i + 1, n):
            sa = a[i] == a[j]
            sb = b[i] == b[j]
            both += sa and sb
            same_a += sa
            same_b += sb
    total = n * (n - 1) // 2
    if total == 0:
        return 1.0
    expected = same_a * same_b / total
    maximum = (same_a + same_b) / 2
    if maximum == expected:
        return 1.0
    return (both - expected) / (maximum - expected)


def square_from_pointset(ps: PointSet) -> np.ndarray:
    """Dense square distance matrix straight from coordinates."""
    n = ps.n
    i, j = np.triu_indices(n, k=1)
    d = pair_distances(ps.coords, ps.metric, i, j)
    sq = np.zeros((n, n))
    sq[i, j] = d
    sq[j, i] = d
    return sq

"""Single-linkage dendrograms via minimum spanning trees.

The single-linkage dendrogram of a connected component is fully determined
by the MST of its sparse subgraph, so this path never forms a dense
sub-matrix: working storage stays O(c_k + m_k) no matter how large the
component grows. Kruskal over pre-sorted edges with a union-find does the
tree; a second union-find pass turns the tree into a linkage matrix.
"""

from __future__ import annotations

import numpy as np

from .accounting import AllocationAccountant
from .graph import SparseDistanceGraph
from .linkage import LinkageMatrix, label_merge_sequence


class DisjointSet:
    """Union-find with path halving and union by size.

    The reported representative of a set is always its smallest member id
    (tracked separately from the size-balanced root), which keeps everything
    downstream order-stable.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.min_id = list(range(n))

    def find(self, u: int) -> int:
        parent = self.parent
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def representative(self, u: int) -> int:
        return self.min_id[self.find(u)]

    def union(self, u: int, v: int) -> bool:
        """Merge the sets of u and v; returns False if already joined."""
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        if self.min_id[rv] < self.min_id[ru]:
            self.min_id[ru] = self.min_id[rv]
        return True


def minimum_spanning_tree(
    sub: SparseDistanceGraph, accountant: AllocationAccountant | None = None
) -> np.ndarray:
    """MST edges of a connected graph as a (c-1, 3) array of (u, v, w) rows.

    Edges are considered in ascending (w, u, v) order, so the result is
    bit-reproducible even under weight ties. A single node yields an empty
    edge array; a disconnected input raises (components upstream guarantee
    connectivity).
    """
    c = sub.n
    if c == 1:
        return np.empty((0, 3), dtype=np.float64)
    u, v, w = sub.upper_triangle()
    order = np.lexsort((v, u, w))
    if accountant is not None:
        accountant.allocate(4 * u.size + 3 * c)
    try:
        us = u[order].tolist()
        vs = v[order].tolist()
        ws = w[order].tolist()
        ds = DisjointSet(c)
        out = np.empty((c - 1, 3), dtype=np.float64)
        taken = 0
        for a, b, weight in zip(us, vs, ws):
            if ds.union(a, b):
                out[taken, 0] = a
                out[taken, 1] = b
                out[taken, 2] = weight
                taken += 1
                if taken == c - 1:
                    break
        if taken != c - 1:
            raise RuntimeError(
                f"subgraph is disconnected: spanning forest has {taken + 1} trees"
            )
    finally:
        if accountant is not None:
            accountant.release(4 * u.size + 3 * c)
    return out


def mst_to_linkage(
    edges: np.ndarray, c: int, accountant: AllocationAccountant | None = None
) -> LinkageMatrix:
    """Linkage matrix from spanning-tree edges via a union-find pass.

    Edges are processed in ascending weight order with (u, v) lexicographic
    tie-breaking on original ids; record t merges the clusters currently
    containing u and v at height w, creating cluster id c + t.
    """
    edges = np.asarray(edges, dtype=np.float64)
    if edges.shape != (c - 1, 3):
        raise ValueError(f"expected {c - 1} spanning edges for {c} nodes, got {edges.shape}")
    if c == 1:
        return LinkageMatrix(merges=np.empty((0, 4)), n_leaves=1)
    u = edges[:, 0].astype(np.int64)
    v = edges[:, 1].astype(np.int64)
    w = edges[:, 2]
    order = np.lexsort((v, u, w))
    if accountant is not None:
        with accountant.track(3 * (c - 1) + 8 * c):
            return label_merge_sequence(u[order], v[order], w[order], c)
    return label_merge_sequence(u[order], v[order], w[order], c)

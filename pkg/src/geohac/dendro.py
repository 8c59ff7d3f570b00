"""Dendrogram cuts, global label assembly and partition agreement scoring.

Cut semantics are inclusive: two points share a cluster at height h iff they
are connected through merges with height <= h. Labels are always reported in
canonical form (numbered by first occurrence in point order) so "identical
partitions" can be tested as plain vector equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import ComponentPartition
from .linkage import LinkageMatrix


@dataclass(frozen=True)
class CutLabels:
    """Cluster labels for one cut height; ids are contiguous 0..k-1."""

    h: float
    labels: np.ndarray  # int64, length n

    @property
    def n_clusters(self) -> int:
        return count_clusters(self.labels)


def canonicalize_labels(labels: np.ndarray) -> np.ndarray:
    """Renumber labels to 0..k-1 in order of first occurrence."""
    labels = np.asarray(labels)
    uniq, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(uniq.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.size, dtype=np.int64)
    return rank[inv]


def cut_tree(z: LinkageMatrix, h: float, h_max: float | None = None) -> np.ndarray:
    """Local label vector from cutting a linkage matrix at height h.

    When h_max is given (the sparse pipeline does), cuts above it are
    rejected: beyond h_max the sparse graph no longer carries enough
    information for the result to match a dense run.
    """
    if h < 0:
        raise ValueError(f"cut height must be non-negative, got {h}")
    if h_max is not None and h > h_max:
        raise ValueError(f"cut height {h} exceeds h_max {h_max}")
    n = z.n_leaves
    parent = np.arange(2 * n - 1, dtype=np.int64)
    heights = z.heights
    # Heights are non-decreasing, so merges at <= h form a prefix.
    stop = int(np.searchsorted(heights, h, side="right")) if n > 1 else 0
    for t in range(stop):
        new = n + t
        parent[int(z.merges[t, 0])] = new
        parent[int(z.merges[t, 1])] = new
    labels = np.empty(n, dtype=np.int64)
    for i in range(n):
        root = i
        while parent[root] != root:
            root = parent[root]
        u = i
        while parent[u] != root:
            parent[u], u = root, int(parent[u])
        labels[i] = root
    return canonicalize_labels(labels)


def assemble_global_labels(
    cuts: list, partition: ComponentPartition, heights: list
) -> list[CutLabels]:
    """Merge per-component local labels into global canonical label vectors.

    cuts[k][t] holds component k's local labels at heights[t]. Each
    component's labels are shifted by a running offset (incremented by the
    component size), then the assembled vector is canonicalized.
    """
    if len(cuts) != partition.K:
        raise ValueError(f"got labels for {len(cuts)} components, expected {partition.K}")
    n = partition.component_id.size
    out = []
    for t, h in enumerate(heights):
        merged = np.empty(n, dtype=np.int64)
        offset = 0
        for k, members in enumerate(partition.members):
            local = cuts[k]
            if local is None or len(local) != len(heights):
                raise ValueError(f"component {k} is missing labels for some cut heights")
            merged[members] = offset + np.asarray(local[t], dtype=np.int64)
            offset += len(members)
        out.append(CutLabels(h=float(h), labels=canonicalize_labels(merged)))
    return out


def count_clusters(labels) -> int:
    labels = np.asarray(labels)
    if labels.size == 0:
        return 0
    return int(np.unique(labels).size)


def adjusted_rand_index(a, b) -> float:
    """Standard ARI in [-1, 1]; exactly 1.0 iff the partitions are identical.

    Computed from the contingency table in exact rational arithmetic so that
    the "== 1.0" exactness checks carry no floating-point caveats.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"label vectors must be equal-length 1-d, got {a.shape} vs {b.shape}")
    n = a.size
    ua, ai = np.unique(a, return_inverse=True)
    ub, bi = np.unique(b, return_inverse=True)
    nij = np.bincount(ai * ub.size + bi, minlength=ua.size * ub.size)
    ni = np.bincount(ai, minlength=ua.size)
    nj = np.bincount(bi, minlength=ub.size)

    def comb2_sum(counts) -> int:
        counts = counts.astype(np.int64)
        return int((counts * (counts - 1) // 2).sum())

    index = comb2_sum(nij)
    sum_a = comb2_sum(ni)
    sum_b = comb2_sum(nj)
    total = n * (n - 1) // 2
    # ARI = (index - sa*sb/T) / ((sa+sb)/2 - sa*sb/T), scaled by T exactly.
    numer = Fraction(index) * total - Fraction(sum_a) * sum_b
    denom = Fraction(total) * (sum_a + sum_b) / 2 - Fraction(sum_a) * sum_b
    if denom == 0:
        # Both partitions degenerate (all-singletons or one cluster): they
        # can only be identical here, which scores 1 by convention.
        return 1.0
    return float(numer / denom)

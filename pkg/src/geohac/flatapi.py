"""Flat in-process entry points for foreign-function-style callers.

These mirror a C ABI: scalars, integer codes and flat row-major float64
buffers in; label buffers and counts out. No objects from the rest of the
package cross this boundary, which keeps thin wrappers (estimator facades,
other-language bindings) free of any algorithmic knowledge.
"""

from __future__ import annotations

import numpy as np

from .dendro import count_clusters
from .graph import build_distance_graph
from .metrics import EUCLIDEAN, HAVERSINE, PointSet
from .pipeline import sparse_geo_hclust

METRIC_CODES = {0: EUCLIDEAN, 1: HAVERSINE}
LINKAGE_CODES = {0: "single", 1: "complete", 2: "average", 3: "ward"}


def _point_set(n: int, coords, metric_code: int) -> PointSet:
    metric = METRIC_CODES.get(int(metric_code))
    if metric is None:
        raise ValueError(f"unknown metric code {metric_code}; expected one of {sorted(METRIC_CODES)}")
    buf = np.ascontiguousarray(coords, dtype=np.float64).reshape(-1)
    if buf.size != 2 * n:
        raise ValueError(f"coordinate buffer has {buf.size} values, expected 2*n = {2 * n}")
    return PointSet(coords=buf.reshape(n, 2), metric=metric)


def cluster_flat(
    n: int,
    coords,
    metric_code: int,
    h_max: float,
    threshold: float,
    linkage_code: int,
) -> tuple[np.ndarray, int, int]:
    """Cluster a flat coordinate buffer at one cut height.

    coords holds n (lat, lon) or (x, y) pairs row-major. Returns the
    canonical label buffer (int64, length n), the connected-component count
    and the cluster count. threshold must not exceed h_max.
    """
    ps = _point_set(n, coords, metric_code)
    linkage = LINKAGE_CODES.get(int(linkage_code))
    if linkage is None:
        raise ValueError(f"unknown linkage code {linkage_code}; expected one of {sorted(LINKAGE_CODES)}")
    if threshold > h_max:
        raise ValueError(f"threshold {threshold} exceeds h_max {h_max}")
    result = sparse_geo_hclust(ps, h_max, linkage, [threshold], keep_linkages=False)
    labels = result.cuts[0].labels
    return labels, result.n_components, count_clusters(labels)


def connectivity_flat(
    n: int,
    coords,
    metric_code: int,
    h_max: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Sparsity pattern of the distance-band graph as (row_offsets, col_indices)."""
    ps = _point_set(n, coords, metric_code)
    g = build_distance_graph(ps, h_max)
    return g.row_offsets.copy(), g.col_indices.copy()

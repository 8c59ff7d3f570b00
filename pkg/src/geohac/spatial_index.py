"""Spatial index over a point set answering exact fixed-radius queries.

One KD-tree implementation serves both metrics: planar points are indexed on
their own coordinates, geodesic points on their unit-sphere embedding with
query radii converted to chord lengths. Candidate sets are fetched with a
slightly inflated radius and then filtered with the exact metric, so results
are defined purely by the distance kernels in :mod:`geohac.metrics` and are
immune to rounding in the tree's internal arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .metrics import (
    EARTH_RADIUS_KM,
    EUCLIDEAN,
    HAVERSINE,
    PointSet,
    embed_unit_sphere,
    point_to_points_distances,
    pair_distances,
    radius_to_chord,
)

DEFAULT_LEAF_SIZE = 16

# Relative + absolute slack applied to tree query radii. Overshoot only adds
# candidates that the exact-distance filter removes again; it must dominate
# the rounding error of the embedding (~1e-15 relative, ~4e-16 absolute).
_REL_SLACK = 1e-9
_ABS_SLACK = 1e-12


@dataclass(frozen=True)
class SpatialIndex:
    """Immutable KD-tree over a PointSet; safe for concurrent queries."""

    points: PointSet
    tree: cKDTree
    query_coords: np.ndarray
    leaf_size: int

    @property
    def n(self) -> int:
        return self.points.n

    @property
    def metric(self) -> str:
        return self.points.metric


def build_index(ps: PointSet, leaf_size: int = DEFAULT_LEAF_SIZE) -> SpatialIndex:
    """Build a balanced KD-tree over all points of ps."""
    if ps.n < 1:
        raise ValueError("cannot index an empty point set")
    if ps.metric == HAVERSINE:
        query_coords = embed_unit_sphere(ps.coords)
    else:
        query_coords = ps.coords
    tree = cKDTree(query_coords, leafsize=leaf_size, balanced_tree=True, compact_nodes=True)
    return SpatialIndex(points=ps, tree=tree, query_coords=query_coords, leaf_size=leaf_size)


def _tree_radius(idx: SpatialIndex, h_max: float) -> float:
    if idx.metric == HAVERSINE:
        # Clamp: geodesic distances never exceed half the circumference.
        h_eff = min(h_max, math.pi * EARTH_RADIUS_KM)
        r = radius_to_chord(h_eff)
    else:
        r = h_max
    return r * (1.0 + _REL_SLACK) + _ABS_SLACK


def range_query(idx: SpatialIndex, center_id: int, h_max: float) -> np.ndarray:
    """Ids j != center_id with d(center, j) <= h_max (inclusive), sorted."""
    if h_max <= 0.0:
        raise ValueError(f"h_max must be positive, got {h_max}")
    if not 0 <= center_id < idx.n:
        raise ValueError(f"point id {center_id} out of range [0, {idx.n})")
    cand = idx.tree.query_ball_point(idx.query_coords[center_id], _tree_radius(idx, h_max))
    cand = np.asarray(sorted(cand), dtype=np.int64)
    cand = cand[cand != center_id]
    if cand.size == 0:
        return cand
    d = point_to_points_distances(idx.points.coords, idx.metric, center_id, cand)
    return cand[d <= h_max]


def query_pairs(idx: SpatialIndex, h_max: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All unordered pairs within h_max as (i, j, d) arrays with i < j.

    Each qualifying pair appears exactly once with its exact distance;
    coincident points yield zero-weight pairs. Output is sorted by (i, j).
    """
    if h_max <= 0.0:
        raise ValueError(f"h_max must be positive, got {h_max}")
    pairs = idx.tree.query_pairs(_tree_radius(idx, h_max), output_type="ndarray")
    if pairs.shape[0] == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), np.empty(0, dtype=np.float64)
    i = pairs[:, 0].astype(np.int64)
    j = pairs[:, 1].astype(np.int64)
    d = pair_distances(idx.points.coords, idx.metric, i, j)
    keep = d <= h_max
    i, j, d = i[keep], j[keep], d[keep]
    order = np.lexsort((j, i))
    return i[order], j[order], d[order]

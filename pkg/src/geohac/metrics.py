"""Distance functions and coordinate transforms for planar and geodesic points.

All distances are kilometres, all angles degrees, all arithmetic double
precision. The vectorised pair kernels below are the single source of truth
for distance values: graph construction, condensed-matrix extraction and the
dense baseline all route through them, so the same pair of points always
produces the bit-identical distance everywhere in the pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# IUGG mean Earth radius. Changing it rescales absolute geodesic distances
# (<0.1% between common conventions) but never affects exactness claims.
EARTH_RADIUS_KM = 6371.0088

EUCLIDEAN = "euclidean"
HAVERSINE = "haversine"
METRICS = (EUCLIDEAN, HAVERSINE)


class PlanarPoint(NamedTuple):
    """Projected point, coordinates in km."""

    x: float
    y: float


class GeoPoint(NamedTuple):
    """Geodesic point, coordinates in degrees."""

    lat: float
    lon: float


@dataclass(frozen=True)
class PointSet:
    """n spatial features as an (n, 2) float64 array plus a metric tag.

    For the haversine metric the columns are (lat, lon) in degrees; for the
    euclidean metric they are (x, y) in kilometres. Point ids are the row
    indices, stable 0..n-1. Coincident points are legal.
    """

    coords: np.ndarray
    metric: str

    def __post_init__(self):
        coords = np.ascontiguousarray(np.asarray(self.coords, dtype=np.float64))
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise ValueError(f"coords must have shape (n, 2), got {coords.shape}")
        if coords.shape[0] < 1:
            raise ValueError("PointSet requires at least one point")
        if not np.isfinite(coords).all():
            bad = int(np.flatnonzero(~np.isfinite(coords).all(axis=1))[0])
            raise ValueError(f"non-finite coordinates at point {bad}")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}; expected one of {METRICS}")
        if self.metric == HAVERSINE:
            lat, lon = coords[:, 0], coords[:, 1]
            bad_lat = np.abs(lat) > 90.0
            if bad_lat.any():
                i = int(np.flatnonzero(bad_lat)[0])
                raise ValueError(f"latitude out of [-90, 90] at point {i}: {lat[i]}")
            bad_lon = np.abs(lon) > 180.0
            if bad_lon.any():
                i = int(np.flatnonzero(bad_lon)[0])
                raise ValueError(f"longitude out of [-180, 180] at point {i}: {lon[i]}")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.coords.shape[0]


def euclidean_distance(a, b) -> float:
    """Planar distance sqrt((ax-bx)^2 + (ay-by)^2) between two (x, y) points.

    Delegates to the vectorised kernel (see haversine_distance for why).
    """
    pa = np.array([a], dtype=np.float64)
    pb = np.array([b], dtype=np.float64)
    return float(_euclidean_kernel(pa, pb)[0])


def haversine_distance(a, b, radius: float = EARTH_RADIUS_KM) -> float:
    """Great-circle distance between two (lat, lon) points on a sphere.

    Delegates to the vectorised kernel so scalar and batch calls share one
    set of transcendental evaluations (libm and SIMD paths can differ in the
    last ulp, which would break bit-level reproducibility guarantees).
    """
    pa = np.array([a], dtype=np.float64)
    pb = np.array([b], dtype=np.float64)
    return float(_haversine_kernel(pa, pb, radius)[0])


def _euclidean_kernel(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # hypot, not sqrt(dx*dx + dy*dy): immune to under/overflow of the squares,
    # so d == 0 iff the coordinates are equal.
    return np.hypot(a[:, 0] - b[:, 0], a[:, 1] - b[:, 1])


def _haversine_kernel(a: np.ndarray, b: np.ndarray, radius: float) -> np.ndarray:
    # asin(sqrt(.)) form: numerically stable near zero separation.
    lat1 = np.deg2rad(a[:, 0])
    lat2 = np.deg2rad(b[:, 0])
    dlat = lat2 - lat1
    dlon = np.deg2rad(b[:, 1]) - np.deg2rad(a[:, 1])
    s1 = np.sin(0.5 * dlat)
    s2 = np.sin(0.5 * dlon)
    h = s1 * s1 + np.cos(lat1) * np.cos(lat2) * s2 * s2
    np.clip(h, 0.0, 1.0, out=h)
    return (2.0 * radius) * np.arcsin(np.sqrt(h))


def pair_distances(
    coords: np.ndarray,
    metric: str,
    i: np.ndarray,
    j: np.ndarray,
    radius: float = EARTH_RADIUS_KM,
) -> np.ndarray:
    """Exact distances for index pairs (i[k], j[k]) into a coordinate array."""
    a = coords[np.asarray(i, dtype=np.intp)]
    b = coords[np.asarray(j, dtype=np.intp)]
    if metric == EUCLIDEAN:
        return _euclidean_kernel(a, b)
    if metric == HAVERSINE:
        return _haversine_kernel(a, b, radius)
    raise ValueError(f"unknown metric {metric!r}")


def point_to_points_distances(
    coords: np.ndarray,
    metric: str,
    i: int,
    js: np.ndarray,
    radius: float = EARTH_RADIUS_KM,
) -> np.ndarray:
    """Distances from point i to each point in js."""
    js = np.asarray(js, dtype=np.intp)
    return pair_distances(coords, metric, np.full(js.shape, i, dtype=np.intp), js, radius)


def condensed_from_coords(
    coords: np.ndarray,
    metric: str,
    radius: float = EARTH_RADIUS_KM,
) -> np.ndarray:
    """All pairwise distances in row-major upper-triangle (condensed) order.

    Computed row by row so the transient footprint stays O(n) beyond the
    output buffer itself.
    """
    n = coords.shape[0]
    out = np.empty(n * (n - 1) // 2, dtype=np.float64)
    pos = 0
    for i in range(n - 1):
        k = n - 1 - i
        out[pos : pos + k] = point_to_points_distances(
            coords, metric, i, np.arange(i + 1, n), radius
        )
        pos += k
    return out


def geo_to_unit_sphere(p) -> np.ndarray:
    """Embed a (lat, lon) point on the unit sphere as (x, y, z)."""
    return embed_unit_sphere(np.array([p], dtype=np.float64))[0]


def embed_unit_sphere(coords: np.ndarray) -> np.ndarray:
    """Embed (lat, lon) degree rows on the unit sphere, shape (n, 3).

    Chord length between embedded points is 2*sin(d/(2R)) for geodesic
    distance d, which makes euclidean range queries in the embedding exactly
    equivalent to haversine range queries (see radius_to_chord).
    """
    lat = np.deg2rad(coords[:, 0])
    lon = np.deg2rad(coords[:, 1])
    cos_lat = np.cos(lat)
    out = np.empty((coords.shape[0], 3), dtype=np.float64)
    out[:, 0] = cos_lat * np.cos(lon)
    out[:, 1] = cos_lat * np.sin(lon)
    out[:, 2] = np.sin(lat)
    return out


def radius_to_chord(h: float, radius: float = EARTH_RADIUS_KM) -> float:
    """Convert a great-circle radius (km) to a chord length on the unit sphere.

    Monotone on [0, pi*R], so d(a, b) <= h on the sphere iff the chord
    between the embedded points is <= radius_to_chord(h).
    """
    limit = math.pi * radius
    if h < 0.0 or h > limit:
        raise ValueError(f"radius {h} km outside [0, {limit}] (half circumference)")
    return 2.0 * math.sin(h / (2.0 * radius))

"""Reading point sets and writing label/summary files.

Input formats: (a) comma-separated text with a header of exactly `lat,lon`
(geodesic, degrees) or `x,y` (planar, km) in either column order; (b) a
minimal GeoJSON subset, a FeatureCollection of Point features (geodesic).
Point ids are 0-based row/feature order in both cases. All distance values
on disk and on the command line are kilometres; a trailing `m` or `km`
suffix is accepted on CLI values.
"""

from __future__ import annotations

import json

import numpy as np

from .dendro import CutLabels
from .metrics import EUCLIDEAN, HAVERSINE, PointSet


def parse_km(text: str) -> float:
    """Parse a distance like '20', '5km' or '500m' into km."""
    raw = text.strip().lower()
    scale = 1.0
    if raw.endswith("km"):
        raw = raw[:-2]
    elif raw.endswith("m"):
        raw = raw[:-1]
        scale = 1e-3
    try:
        return float(raw) * scale
    except ValueError:
        raise ValueError(f"cannot parse distance {text!r}") from None


def parse_cut_list(text: str) -> list[float]:
    cuts = [parse_km(part) for part in text.split(",") if part.strip()]
    if not cuts:
        raise ValueError(f"no cut heights in {text!r}")
    return cuts


def _load_delimited(path) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header:
            raise ValueError(f"{path}: empty file")
        cols = [c.strip().lower() for c in header.rstrip("\n").split(",")]
        if sorted(cols) == ["lat", "lon"]:
            metric = HAVERSINE
        elif sorted(cols) == ["x", "y"]:
            metric = EUCLIDEAN
        else:
            raise ValueError(
                f"{path}: header must be exactly lat,lon or x,y (got {header.strip()!r})"
            )
        rows = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 2 columns, got {len(parts)}")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: cannot parse {line.strip()!r}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    coords = np.asarray(rows, dtype=np.float64)
    if metric == HAVERSINE:
        # Reorder to (lat, lon) regardless of header order, then range-check
        # with line numbers before PointSet re-validates.
        if cols == ["lon", "lat"]:
            coords = coords[:, ::-1]
        bad = np.flatnonzero(np.abs(coords[:, 0]) > 90.0)
        if bad.size:
            raise ValueError(f"{path}: line {bad[0] + 2}: latitude {coords[bad[0], 0]} out of range")
        bad = np.flatnonzero(np.abs(coords[:, 1]) > 180.0)
        if bad.size:
            raise ValueError(f"{path}: line {bad[0] + 2}: longitude {coords[bad[0], 1]} out of range")
    elif cols == ["y", "x"]:
        coords = coords[:, ::-1]
    return PointSet(coords=coords, metric=metric)


def _load_geojson(path) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON: {exc}") from None
    if doc.get("type") != "FeatureCollection":
        raise ValueError(f"{path}: expected a FeatureCollection, got {doc.get('type')!r}")
    feats = doc.get("features")
    if not isinstance(feats, list) or not feats:
        raise ValueError(f"{path}: FeatureCollection has no features")
    coords = np.empty((len(feats), 2), dtype=np.float64)
    for i, feat in enumerate(feats):
        geom = (feat or {}).get("geometry") or {}
        if geom.get("type") != "Point":
            raise ValueError(f"{path}: feature {i}: only Point geometries are supported")
        pos = geom.get("coordinates")
        if not isinstance(pos, (list, tuple)) or len(pos) < 2:
            raise ValueError(f"{path}: feature {i}: malformed coordinates")
        lon, lat = float(pos[0]), float(pos[1])
        if abs(lat) > 90.0:
            raise ValueError(f"{path}: feature {i}: latitude {lat} out of range")
        if abs(lon) > 180.0:
            raise ValueError(f"{path}: feature {i}: longitude {lon} out of range")
        coords[i, 0] = lat
        coords[i, 1] = lon
    return PointSet(coords=coords, metric=HAVERSINE)


def load_points(path, fmt: str = "auto") -> PointSet:
    """Load a PointSet; fmt is 'csv', 'geojson' or 'auto' (by extension)."""
    if fmt == "auto":
        fmt = "geojson" if str(path).lower().endswith((".geojson", ".json")) else "csv"
    if fmt == "csv":
        return _load_delimited(path)
    if fmt == "geojson":
        return _load_geojson(path)
    raise ValueError(f"unknown input format {fmt!r}; expected csv or geojson")


def write_labels(path, cuts: list[CutLabels]) -> None:
    """One row per point: point_id plus its canonical label at each cut."""
    if not cuts:
        raise ValueError("no cuts to write")
    n = cuts[0].labels.size
    for c in cuts:
        if c.labels.size != n:
            raise ValueError("cut label vectors disagree in length")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("point_id," + ",".join(f"h={c.h!r}" for c in cuts) + "\n")
        columns = [c.labels.tolist() for c in cuts]
        for i in range(n):
            fh.write(f"{i}," + ",".join(str(col[i]) for col in columns) + "\n")


def read_labels(path) -> list[CutLabels]:
    """Inverse of write_labels."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().rstrip("\n").split(",")
        if header[:1] != ["point_id"] or len(header) < 2:
            raise ValueError(f"{path}: not a labels file")
        heights = []
        for col in header[1:]:
            if not col.startswith("h="):
                raise ValueError(f"{path}: bad cut column {col!r}")
            heights.append(float(col[2:]))
        rows = []
        for lineno, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").split(",")
            if len(parts) != len(header):
                raise ValueError(f"{path}: line {lineno}: wrong column count")
            if int(parts[0]) != lineno - 2:
                raise ValueError(f"{path}: line {lineno}: point ids out of order")
            rows.append([int(p) for p in parts[1:]])
    data = np.asarray(rows, dtype=np.int64)
    return [CutLabels(h=h, labels=data[:, t].copy()) for t, h in enumerate(heights)]


def write_points_csv(path, ps: PointSet) -> None:
    """Write a PointSet in the delimited input format (round-trippable)."""
    headers = {EUCLIDEAN: "x,y", HAVERSINE: "lat,lon"}
    with open(path, "w", encoding="ascii") as fh:
        fh.write(headers[ps.metric] + "\n")
        for a, b in ps.coords.tolist():
            fh.write(f"{a!r},{b!r}\n")

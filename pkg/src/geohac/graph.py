"""Sparse radius-bounded distance graph and its connected components.

The graph stores exactly the point pairs within h_max, symmetrically, in
CSR form: Theta(n + m) entries. Intra-component pairs farther apart than
h_max are *not* stored; the condensed extractor recomputes them from
coordinates on demand, which keeps graph storage O(m) while still handing
the per-component HAC step every pairwise distance it needs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _csgraph_components

from .accounting import AllocationAccountant
from .metrics import PointSet, point_to_points_distances
from .spatial_index import DEFAULT_LEAF_SIZE, build_index, query_pairs


@dataclass(frozen=True)
class SparseDistanceGraph:
    """Symmetric CSR adjacency with exact distances <= h_max (km).

    Within each row the column indices are strictly increasing; there are no
    self loops. Zero-weight edges (coincident points) are kept.
    """

    n: int
    h_max: float
    row_offsets: np.ndarray  # int64, length n+1
    col_indices: np.ndarray  # int64, length 2m
    weights: np.ndarray  # float64, length 2m

    @property
    def m(self) -> int:
        """Undirected edge count."""
        return self.col_indices.size // 2

    @property
    def mean_degree(self) -> float:
        return 2.0 * self.m / self.n

    @property
    def storage_entries(self) -> int:
        """Total array entries held by the CSR representation."""
        return self.row_offsets.size + self.col_indices.size + self.weights.size

    def neighbors(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.row_offsets[i], self.row_offsets[i + 1]
        return self.col_indices[lo:hi], self.weights[lo:hi]

    def upper_triangle(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Each undirected edge once as (i, j, w) with i < j, sorted by (i, j)."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.row_offsets))
        keep = self.col_indices > rows
        return rows[keep], self.col_indices[keep], self.weights[keep]


@dataclass(frozen=True)
class ComponentPartition:
    """Node -> component assignment plus per-component member lists.

    Components are numbered 0..K-1 in order of their smallest member id;
    member lists are sorted, disjoint and cover all nodes.
    """

    component_id: np.ndarray  # int64, length n
    members: list

    @property
    def K(self) -> int:
        return len(self.members)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(m) for m in self.members], dtype=np.int64)


def graph_from_pairs(
    n: int, i: np.ndarray, j: np.ndarray, d: np.ndarray, h_max: float
) -> SparseDistanceGraph:
    """Assemble the symmetric CSR graph from unique upper-triangle pairs."""
    rows = np.concatenate([i, j])
    cols = np.concatenate([j, i])
    w = np.concatenate([d, d])
    order = np.lexsort((cols, rows))
    row_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=row_offsets[1:])
    return SparseDistanceGraph(
        n=n,
        h_max=float(h_max),
        row_offsets=row_offsets,
        col_indices=cols[order].astype(np.int64, copy=False),
        weights=w[order],
    )


def build_distance_graph(
    ps: PointSet, h_max: float, leaf_size: int = DEFAULT_LEAF_SIZE
) -> SparseDistanceGraph:
    """Materialise the graph of all pairs within h_max with exact distances."""
    idx = build_index(ps, leaf_size=leaf_size)
    i, j, d = query_pairs(idx, h_max)
    return graph_from_pairs(ps.n, i, j, d, h_max)


def connected_components(g: SparseDistanceGraph) -> ComponentPartition:
    """Decompose the graph into maximal connected sets.

    Component numbering is deterministic: components are ordered by their
    smallest member id, so repeated runs (and any processing order downstream)
    yield identical partitions.
    """
    # Pattern-only matrix: explicit ones, so zero-weight edges stay edges.
    pattern = csr_matrix(
        (np.ones(g.col_indices.size, dtype=np.int8), g.col_indices, g.row_offsets),
        shape=(g.n, g.n),
    )
    _, raw = _csgraph_components(pattern, directed=False)
    _, first, inv = np.unique(raw, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    component_id = rank[inv]
    order = np.argsort(component_id, kind="stable")  # members stay sorted
    sizes = np.bincount(component_id)
    members = np.split(order.astype(np.int64), np.cumsum(sizes)[:-1])
    return ComponentPartition(component_id=component_id, members=members)


def extract_component_condensed(
    g: SparseDistanceGraph,
    ps: PointSet,
    members: np.ndarray,
    accountant: AllocationAccountant | None = None,
) -> np.ndarray:
    """All pairwise distances within one component, condensed order.

    Every pair is recomputed from coordinates: connectivity only guarantees
    path-connection within h_max, so intra-component pairs may well exceed
    h_max and are absent from the graph. Graph edges reproduce their stored
    weights exactly because the same distance kernel computed both.
    """
    members = np.asarray(members, dtype=np.int64)
    c = members.size
    if c < 2:
        raise ValueError(f"condensed extraction needs a component of >= 2 nodes, got {c}")
    out = np.empty(c * (c - 1) // 2, dtype=np.float64)
    if accountant is not None:
        accountant.allocate(out.size)
    pos = 0
    for a in range(c - 1):
        k = c - 1 - a
        out[pos : pos + k] = point_to_points_distances(
            ps.coords, ps.metric, int(members[a]), members[a + 1 :]
        )
        pos += k
    return out


def extract_component_subgraph(
    g: SparseDistanceGraph, members: np.ndarray
) -> SparseDistanceGraph:
    """Induced subgraph on a component, nodes relabelled by rank within it."""
    members = np.asarray(members, dtype=np.int64)
    c = members.size
    starts = g.row_offsets[members]
    lens = g.row_offsets[members + 1] - starts
    total = int(lens.sum())
    row_offsets = np.zeros(c + 1, dtype=np.int64)
    np.cumsum(lens, out=row_offsets[1:])
    if total == 0:
        return SparseDistanceGraph(
            n=c,
            h_max=g.h_max,
            row_offsets=row_offsets,
            col_indices=np.empty(0, dtype=np.int64),
            weights=np.empty(0, dtype=np.float64),
        )
    # Gather all row slices at once: positions are start_of_row + local offset.
    take = np.arange(total, dtype=np.int64)
    take += np.repeat(starts - (row_offsets[:-1]), lens)
    cols = g.col_indices[take]
    weights = g.weights[take]
    local = np.full(g.n, -1, dtype=np.int64)
    local[members] = np.arange(c, dtype=np.int64)
    local_cols = local[cols]
    if (local_cols < 0).any():
        raise ValueError("member list is not closed under graph edges")
    return SparseDistanceGraph(
        n=c, h_max=g.h_max, row_offsets=row_offsets, col_indices=local_cols, weights=weights
    )


def write_edge_list(path, g: SparseDistanceGraph) -> None:
    """Dump each undirected edge once as `i,j,d_km`, sorted by (i, j).

    The graph is a reusable product on its own; this format is the exchange
    surface for external tools.
    """
    i, j, w = g.upper_triangle()
    with open(path, "w", encoding="ascii") as fh:
        fh.write("i,j,d_km\n")
        for a, b, d in zip(i.tolist(), j.tolist(), w.tolist()):
            fh.write(f"{a},{b},{d!r}\n")


def read_edge_list(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read an edge list written by write_edge_list."""
    i, j, d = [], [], []
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "i,j,d_km":
            raise ValueError(f"unexpected edge-list header: {header!r}")
        for line in fh:
            a, b, w = line.rstrip("\n").split(",")
            i.append(int(a))
            j.append(int(b))
            d.append(float(w))
    return (
        np.asarray(i, dtype=np.int64),
        np.asarray(j, dtype=np.int64),
        np.asarray(d, dtype=np.float64),
    )

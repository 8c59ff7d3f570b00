"""Exact agglomerative clustering on condensed distance arrays.

The nearest-neighbor chain algorithm runs in O(c^2) time with O(c) working
storage beyond the condensed array, which it consumes destructively. All
four supported linkage rules (single, complete, average, Ward) are
reducible, so merge heights are non-decreasing after the final stable
sort-and-relabel pass.

Ward heights are reported in distance units (square root applied), i.e. two
singletons merge at exactly their pairwise distance. Cut heights therefore
live on the same km scale for every linkage rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .accounting import AllocationAccountant

SINGLE = "single"
COMPLETE = "complete"
AVERAGE = "average"
WARD = "ward"
LINKAGES = (SINGLE, COMPLETE, AVERAGE, WARD)


@dataclass(frozen=True)
class LinkageMatrix:
    """Dendrogram as (left, right, height, size) merge records.

    Exactly n_leaves-1 rows; ids < n_leaves are original points, id
    n_leaves+t is the cluster created by record t; heights are
    non-decreasing and sizes telescope.
    """

    merges: np.ndarray  # (n_leaves-1, 4) float64
    n_leaves: int

    @property
    def heights(self) -> np.ndarray:
        return self.merges[:, 2]

    def check(self) -> None:
        """Validate structural invariants (test support)."""
        n = self.n_leaves
        z = self.merges
        assert z.shape == (max(n - 1, 0), 4)
        if n < 2:
            return
        assert (np.diff(z[:, 2]) >= 0).all(), "heights must be non-decreasing"
        seen = set()
        for t in range(n - 1):
            left, right, _, size = z[t]
            left, right, size = int(left), int(right), int(size)
            for ref in (left, right):
                assert 0 <= ref < n + t, f"record {t} references unborn cluster {ref}"
                assert ref not in seen, f"cluster {ref} referenced twice"
                seen.add(ref)
            size_of = lambda r: 1 if r < n else int(z[r - n, 3])
            assert size == size_of(left) + size_of(right), f"size mismatch at record {t}"
        assert int(z[-1, 3]) == n


def write_linkage(path, z: LinkageMatrix) -> None:
    """One `left right height size` line per merge record."""
    with open(path, "w", encoding="ascii") as fh:
        for left, right, h, size in z.merges:
            fh.write(f"{int(left)} {int(right)} {h!r} {int(size)}\n")


def lance_williams_update(method: str, d_ai, d_bi, d_ab, n_a, n_b, n_i):
    """Distance from the merge of clusters a, b to cluster i.

    Accepts scalars or aligned arrays for the d_* / n_i arguments.
    """
    if method == SINGLE:
        return np.minimum(d_ai, d_bi)
    if method == COMPLETE:
        return np.maximum(d_ai, d_bi)
    if method == AVERAGE:
        return (n_a * np.asarray(d_ai, dtype=np.float64) + n_b * d_bi) / (n_a + n_b)
    if method == WARD:
        num = (
            (n_a + n_i) * np.square(np.asarray(d_ai, dtype=np.float64))
            + (n_b + n_i) * np.square(d_bi)
            - n_i * (d_ab * d_ab)
        )
        # Rounding can push the variance increase a hair below zero.
        return np.sqrt(np.maximum(num / (n_a + n_b + n_i), 0.0))
    raise ValueError(f"unknown linkage method {method!r}; expected one of {LINKAGES}")


def condensed_index(i, j, c: int):
    """Index of pair (min(i,j), max(i,j)) in a condensed array over c points."""
    i = np.asarray(i, dtype=np.int64)
    j = np.asarray(j, dtype=np.int64)
    lo = np.minimum(i, j)
    hi = np.maximum(i, j)
    return lo * (2 * c - lo - 1) // 2 + (hi - lo - 1)


def label_merge_sequence(
    xs: np.ndarray, ys: np.ndarray, hs: np.ndarray, n: int
) -> LinkageMatrix:
    """Turn raw merges (member-id pairs + heights) into a linkage matrix.

    Records are processed in ascending height order (stable, so the caller's
    tie order is preserved); a union-find over cluster labels rewrites the
    member ids into cluster ids n+t.
    """
    order = np.argsort(hs, kind="stable")
    parent = np.arange(2 * n - 1, dtype=np.int64)
    sizes = np.ones(2 * n - 1, dtype=np.int64)
    merges = np.empty((n - 1, 4), dtype=np.float64)

    def find(u: int) -> int:
        root = u
        while parent[root] != root:
            root = parent[root]
        while parent[u] != root:
            parent[u], u = root, int(parent[u])
        return root

    for t, o in enumerate(order.tolist()):
        a = find(int(xs[o]))
        b = find(int(ys[o]))
        if a == b:
            raise ValueError(f"merge {t} joins an already-merged pair (non-spanning input)")
        if a > b:
            a, b = b, a
        new = n + t
        parent[a] = new
        parent[b] = new
        sizes[new] = sizes[a] + sizes[b]
        merges[t, 0] = a
        merges[t, 1] = b
        merges[t, 2] = hs[o]
        merges[t, 3] = sizes[new]
    return LinkageMatrix(merges=merges, n_leaves=n)


def nn_chain_linkage(
    d: np.ndarray,
    c: int,
    method: str,
    accountant: AllocationAccountant | None = None,
) -> LinkageMatrix:
    """Exact HAC over a condensed distance array via nearest-neighbor chains.

    The condensed array is owned by this call and overwritten in place.
    Ties are broken deterministically: the chain extends to the smallest
    eligible slot id, and on an exact tie with the chain predecessor the
    predecessor wins (which is what terminates the chain).
    """
    if method not in LINKAGES:
        raise ValueError(f"unknown linkage method {method!r}; expected one of {LINKAGES}")
    if c < 2:
        raise ValueError(f"need at least 2 points to cluster, got {c}")
    d = np.asarray(d, dtype=np.float64)
    if d.shape != (c * (c - 1) // 2,):
        raise ValueError(f"condensed array has {d.size} entries, expected {c*(c-1)//2}")

    size = np.ones(c, dtype=np.int64)
    active = np.ones(c, dtype=bool)
    xs = np.empty(c - 1, dtype=np.int64)
    ys = np.empty(c - 1, dtype=np.int64)
    hs = np.empty(c - 1, dtype=np.float64)
    if accountant is not None:
        accountant.allocate(6 * c)  # size, active, merge records, chain bound

    chain: list[int] = []
    try:
        for t in range(c - 1):
            if len(chain) < 2:
                chain = [int(np.flatnonzero(active)[0])]
            while True:
                x = chain[-1]
                others = np.flatnonzero(active)
                others = others[others != x]
                dist = d[condensed_index(x, others, c)]
                if len(chain) > 1:
                    y = chain[-2]
                    best = float(d[condensed_index(x, y, c)])
                else:
                    y = -1
                    best = np.inf
                k = int(np.argmin(dist))
                if dist[k] < best:  # strict: exact tie keeps the predecessor
                    y = int(others[k])
                    best = float(dist[k])
                if len(chain) > 1 and y == chain[-2]:
                    break
                chain.append(y)
            chain.pop()
            chain.pop()

            xs[t], ys[t], hs[t] = x, y, best
            keep = min(x, y)
            drop = max(x, y)
            rest = others[others != y] if y != -1 else others
            if rest.size:
                ix = condensed_index(x, rest, c)
                iy = condensed_index(y, rest, c)
                d[condensed_index(keep, rest, c)] = lance_williams_update(
                    method, d[ix], d[iy], best, int(size[x]), int(size[y]), size[rest]
                )
            size[keep] = size[x] + size[y]
            active[drop] = False
    finally:
        if accountant is not None:
            accountant.release(6 * c)
    return label_merge_sequence(xs, ys, hs, c)

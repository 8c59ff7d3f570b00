"""End-to-end clustering pipeline, dense baseline and exactness verification.

Routing: single linkage takes the MST path per component (no dense
sub-matrix, ever); complete/average/ward extract the component's condensed
distances and run the nearest-neighbor chain. Singleton components bypass
HAC. Components are processed in ascending id order by default; the opt-in
parallel mode distributes them over a thread pool but results are assembled
by component id, so output is identical either way.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .accounting import AllocationAccountant
from .dendro import CutLabels, adjusted_rand_index, assemble_global_labels, count_clusters, cut_tree
from .graph import (
    ComponentPartition,
    SparseDistanceGraph,
    build_distance_graph,
    connected_components,
    extract_component_condensed,
    extract_component_subgraph,
)
from .linkage import LINKAGES, SINGLE, LinkageMatrix, nn_chain_linkage
from .metrics import PointSet, condensed_from_coords
from .mst import minimum_spanning_tree, mst_to_linkage

DENSE_GUARD_DEFAULT = 50_000


class DenseInfeasibleError(RuntimeError):
    """Dense baseline refused: the condensed matrix would not fit."""

    def __init__(self, n: int, guard: int):
        self.n = n
        self.guard = guard
        self.required_mib = n * (n - 1) / 2 * 8 / 2**20
        super().__init__(
            f"dense baseline infeasible for n={n} (guard {guard}): condensed "
            f"matrix alone needs {self.required_mib:.0f} MiB"
        )


@dataclass
class ClusteringResult:
    """Labels at every requested cut plus run structure and phase costs."""

    cuts: list[CutLabels]
    partition: ComponentPartition
    h_max: float
    method: str
    m: int
    mean_degree: float
    graph_entries: int
    graph_seconds: float
    hac_seconds: float
    peak_hac_entries: int
    linkages: list[LinkageMatrix | None] | None = None

    @property
    def n_components(self) -> int:
        return self.partition.K

    @property
    def max_component(self) -> int:
        return int(self.partition.sizes.max())

    @property
    def peak_hac_mib(self) -> float:
        return self.peak_hac_entries * 8 / 2**20

    @property
    def graph_mib(self) -> float:
        return self.graph_entries * 8 / 2**20


@dataclass(frozen=True)
class ExactnessRow:
    method: str
    h: float
    ari: float
    sparse_clusters: int
    dense_clusters: int

    @property
    def passed(self) -> bool:
        return self.ari == 1.0 and self.sparse_clusters == self.dense_clusters


@dataclass
class ExactnessReport:
    rows: list[ExactnessRow] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    def summary(self) -> str:
        lines = [f"{'method':>8} {'h':>10} {'ARI':>6} {'sparse':>7} {'dense':>6} result"]
        for r in self.rows:
            state = "ok" if r.passed else "FAIL"
            lines.append(
                f"{r.method:>8} {r.h:>10.4g} {r.ari:>6.3f} "
                f"{r.sparse_clusters:>7} {r.dense_clusters:>6} {state}"
            )
        return "\n".join(lines)


def _validate_cuts(cuts, h_max: float) -> list[float]:
    cuts = [float(h) for h in cuts]
    if not cuts:
        raise ValueError("at least one cut height is required")
    for h in cuts:
        if h < 0:
            raise ValueError(f"cut height must be non-negative, got {h}")
        if h > h_max:
            raise ValueError(f"cut height {h} exceeds h_max {h_max}")
    return cuts


def _component_linkage(
    graph: SparseDistanceGraph,
    ps: PointSet,
    members: np.ndarray,
    method: str,
    accountant: AllocationAccountant,
) -> LinkageMatrix:
    c = len(members)
    if method == SINGLE:
        sub = extract_component_subgraph(graph, members)
        with accountant.track(sub.storage_entries):
            edges = minimum_spanning_tree(sub, accountant=accountant)
            return mst_to_linkage(edges, c, accountant=accountant)
    cond = extract_component_condensed(graph, ps, members, accountant=accountant)
    try:
        return nn_chain_linkage(cond, c, method, accountant=accountant)
    finally:
        # The condensed buffer dies with this frame; settle its account.
        accountant.release(cond.size)


def sparse_geo_hclust(
    ps: PointSet,
    h_max: float,
    method: str = SINGLE,
    cuts=None,
    *,
    parallel: bool = False,
    max_workers: int | None = None,
    keep_linkages: bool = True,
    leaf_size: int = 16,
    component_order=None,
) -> ClusteringResult:
    """Exact cluster labels at every requested cut height.

    cuts defaults to (h_max,). component_order only affects the order in
    which per-component HAC runs execute; it must be a permutation of
    0..K-1 and never changes the output.
    """
    if h_max <= 0:
        raise ValueError(f"h_max must be positive, got {h_max}")
    if method not in LINKAGES:
        raise ValueError(f"unknown linkage method {method!r}; expected one of {LINKAGES}")
    heights = _validate_cuts([h_max] if cuts is None else list(cuts), h_max)

    t0 = time.perf_counter()
    graph = build_distance_graph(ps, h_max, leaf_size=leaf_size)
    partition = connected_components(graph)
    graph_seconds = time.perf_counter() - t0

    accountant = AllocationAccountant()
    local_cuts: list = [None] * partition.K
    linkages: list = [None] * partition.K

    def run_component(k: int) -> None:
        members = partition.members[k]
        if len(members) == 1:
            local_cuts[k] = [np.zeros(1, dtype=np.int64)] * len(heights)
            return
        z = _component_linkage(graph, ps, members, method, accountant)
        local_cuts[k] = [cut_tree(z, h, h_max) for h in heights]
        if keep_linkages:
            linkages[k] = z

    order = list(range(partition.K)) if component_order is None else list(component_order)
    if sorted(order) != list(range(partition.K)):
        raise ValueError("component_order must be a permutation of 0..K-1")

    t1 = time.perf_counter()
    if parallel:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            list(pool.map(run_component, order))
    else:
        for k in order:
            run_component(k)
    hac_seconds = time.perf_counter() - t1

    return ClusteringResult(
        cuts=assemble_global_labels(local_cuts, partition, heights),
        partition=partition,
        h_max=float(h_max),
        method=method,
        m=graph.m,
        mean_degree=graph.mean_degree,
        graph_entries=graph.storage_entries,
        graph_seconds=graph_seconds,
        hac_seconds=hac_seconds,
        peak_hac_entries=accountant.peak_entries,
        linkages=linkages if keep_linkages else None,
    )


def recut_retained(result: ClusteringResult, h: float) -> CutLabels:
    """Labels at a new height from the retained per-component linkages.

    No HAC is re-run: the stored dendrograms carry all information needed
    for any cut at h <= h_max.
    """
    if result.linkages is None:
        raise ValueError("result was produced with keep_linkages=False")
    local = []
    for k, members in enumerate(result.partition.members):
        if len(members) == 1:
            local.append([np.zeros(1, dtype=np.int64)])
        else:
            local.append([cut_tree(result.linkages[k], h, result.h_max)])
    return assemble_global_labels(local, result.partition, [h])[0]


def dense_hclust_oracle(
    ps: PointSet,
    method: str,
    cuts,
    guard: int = DENSE_GUARD_DEFAULT,
) -> list[CutLabels]:
    """Baseline: one global HAC over the full condensed distance matrix.

    Refuses (with the memory bill) above the guard; cut heights here are
    unrestricted since the full matrix knows every merge.
    """
    if method not in LINKAGES:
        raise ValueError(f"unknown linkage method {method!r}; expected one of {LINKAGES}")
    if ps.n > guard:
        raise DenseInfeasibleError(ps.n, guard)
    heights = [float(h) for h in cuts]
    if not heights:
        raise ValueError("at least one cut height is required")
    if ps.n == 1:
        return [CutLabels(h=h, labels=np.zeros(1, dtype=np.int64)) for h in heights]
    cond = condensed_from_coords(ps.coords, ps.metric)
    z = nn_chain_linkage(cond, ps.n, method)
    del cond
    return [CutLabels(h=h, labels=cut_tree(z, h)) for h in heights]


def verify_exactness(
    ps: PointSet,
    h_max: float,
    methods=LINKAGES,
    cuts=None,
    guard: int = DENSE_GUARD_DEFAULT,
) -> ExactnessReport:
    """Compare sparse and dense cluster assignments method by method, cut by cut."""
    heights = _validate_cuts([h_max] if cuts is None else list(cuts), h_max)
    report = ExactnessReport()
    for method in methods:
        sparse = sparse_geo_hclust(ps, h_max, method, heights, keep_linkages=False)
        dense = dense_hclust_oracle(ps, method, heights, guard=guard)
        for sc, dc in zip(sparse.cuts, dense):
            report.rows.append(
                ExactnessRow(
                    method=method,
                    h=sc.h,
                    ari=adjusted_rand_index(sc.labels, dc.labels),
                    sparse_clusters=count_clusters(sc.labels),
                    dense_clusters=count_clusters(dc.labels),
                )
            )
    return report

"""Exact hierarchical agglomerative clustering on sparse geographic distance graphs.

Instead of the dense n x n distance matrix, the pipeline materialises only
the pairs within a user radius h_max, decomposes the resulting graph into
connected components and clusters each component independently. Cluster
assignments at any cut height h <= h_max are exactly those of a dense run;
a bundled dense baseline verifies this claim on demand.
"""

from .accounting import AllocationAccountant
from .bench import BenchReport, BenchRow, fit_loglog_slope, run_scaling_experiment
from .dendro import (
    CutLabels,
    adjusted_rand_index,
    assemble_global_labels,
    canonicalize_labels,
    count_clusters,
    cut_tree,
)
from .flatapi import LINKAGE_CODES, METRIC_CODES, cluster_flat, connectivity_flat
from .graph import (
    ComponentPartition,
    SparseDistanceGraph,
    build_distance_graph,
    connected_components,
    extract_component_condensed,
    extract_component_subgraph,
    read_edge_list,
    write_edge_list,
)
from .linkage import (
    LINKAGES,
    LinkageMatrix,
    lance_williams_update,
    nn_chain_linkage,
    write_linkage,
)
from .metrics import (
    EARTH_RADIUS_KM,
    EUCLIDEAN,
    HAVERSINE,
    GeoPoint,
    PlanarPoint,
    PointSet,
    euclidean_distance,
    geo_to_unit_sphere,
    haversine_distance,
    radius_to_chord,
)
from .mst import DisjointSet, minimum_spanning_tree, mst_to_linkage
from .pipeline import (
    ClusteringResult,
    DenseInfeasibleError,
    ExactnessReport,
    ExactnessRow,
    dense_hclust_oracle,
    recut_retained,
    sparse_geo_hclust,
    verify_exactness,
)
from .spatial_index import SpatialIndex, build_index, query_pairs, range_query
from .synth import (
    SCENARIOS,
    ScenarioSpec,
    gaussian_mixture,
    generate_chain,
    generate_constant_k,
    generate_gaussian_mixture,
)

__version__ = "0.1.0"

__all__ = [
    "AllocationAccountant",
    "BenchReport",
    "BenchRow",
    "ClusteringResult",
    "ComponentPartition",
    "CutLabels",
    "DenseInfeasibleError",
    "DisjointSet",
    "EARTH_RADIUS_KM",
    "EUCLIDEAN",
    "ExactnessReport",
    "ExactnessRow",
    "GeoPoint",
    "HAVERSINE",
    "LINKAGES",
    "LINKAGE_CODES",
    "METRIC_CODES",
    "LinkageMatrix",
    "PlanarPoint",
    "PointSet",
    "SCENARIOS",
    "ScenarioSpec",
    "SparseDistanceGraph",
    "SpatialIndex",
    "adjusted_rand_index",
    "assemble_global_labels",
    "build_distance_graph",
    "build_index",
    "canonicalize_labels",
    "cluster_flat",
    "connected_components",
    "connectivity_flat",
    "count_clusters",
    "cut_tree",
    "dense_hclust_oracle",
    "euclidean_distance",
    "extract_component_condensed",
    "extract_component_subgraph",
    "fit_loglog_slope",
    "gaussian_mixture",
    "generate_chain",
    "generate_constant_k",
    "generate_gaussian_mixture",
    "geo_to_unit_sphere",
    "haversine_distance",
    "lance_williams_update",
    "minimum_spanning_tree",
    "mst_to_linkage",
    "nn_chain_linkage",
    "query_pairs",
    "radius_to_chord",
    "range_query",
    "read_edge_list",
    "recut_retained",
    "run_scaling_experiment",
    "sparse_geo_hclust",
    "verify_exactness",
    "write_edge_list",
    "write_linkage",
]

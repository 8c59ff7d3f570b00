import numpy as np
import pytest

from conftest import random_planar
from oracles import prim_mst_weight, single_linkage_merge_heights, square_from_pointset

from geohac.accounting import AllocationAccountant
from geohac.graph import build_distance_graph, connected_components, extract_component_subgraph
from geohac.metrics import EUCLIDEAN, PointSet
from geohac.mst import DisjointSet, minimum_spanning_tree, mst_to_linkage


def _largest_connected_subgraph(rng, n, side, h):
    ps = random_planar(rng, n, side=side)
    g = build_distance_graph(ps, h)
    part = connected_components(g)
    biggest = max(range(part.K), key=lambda k: len(part.members[k]))
    return ps, part.members[biggest], extract_component_subgraph(g, part.members[biggest])


class TestDisjointSet:
    def test_representative_is_smallest_member(self):
        ds = DisjointSet(6)
        ds.union(4, 5)
        ds.union(5, 2)
        assert ds.representative(4) == ds.representative(2) == 2
        assert not ds.union(2, 4)

    def test_union_reports_new_joins_only(self):
        ds = DisjointSet(3)
        assert ds.union(0, 1)
        assert ds.union(1, 2)
        assert not ds.union(0, 2)


class TestMinimumSpanningTree:
    def test_single_node(self):
        ps = PointSet(np.zeros((1, 2)), EUCLIDEAN)
        sub = extract_component_subgraph(build_distance_graph(ps, 1.0), np.array([0]))
        assert minimum_spanning_tree(sub).shape == (0, 3)

    def test_triangle_tie(self, four_points):
        # Weights {1, 1, 2}: both unit edges are mandatory, total weight 2.
        g = build_distance_graph(four_points, 3.0)
        sub = extract_component_subgraph(g, np.array([0, 1, 2]))
        edges = minimum_spanning_tree(sub)
        assert edges.shape == (2, 3)
        assert edges[:, 2].tolist() == [1.0, 1.0]

    @pytest.mark.parametrize("seed", range(5))
    def test_total_weight_matches_prim_oracle(self, seed):
        rng = np.random.default_rng(seed)
        _, members, sub = _largest_connected_subgraph(rng, 500, 40.0, 4.0)
        if sub.n < 3:
            pytest.skip("degenerate draw")
        edges = minimum_spanning_tree(sub)
        i, j, w = sub.upper_triangle()
        want = prim_mst_weight(sub.n, zip(i, j, w))
        assert edges[:, 2].sum() == pytest.approx(want, rel=1e-12)

    def test_disconnected_raises(self):
        ps = PointSet(np.array([[0.0, 0.0], [100.0, 100.0]]), EUCLIDEAN)
        g = build_distance_graph(ps, 500.0)
        sub = extract_component_subgraph(g, np.array([0, 1]))
        # Forge a disconnect by dropping the only edge.
        from geohac.graph import SparseDistanceGraph

        empty = SparseDistanceGraph(
            n=2,
            h_max=1.0,
            row_offsets=np.zeros(3, dtype=np.int64),
            col_indices=np.empty(0, dtype=np.int64),
            weights=np.empty(0),
        )
        with pytest.raises(RuntimeError, match="disconnected"):
            minimum_spanning_tree(empty)

    def test_weights_bounded_by_h_max(self):
        rng = np.random.default_rng(12)
        _, _, sub = _largest_connected_subgraph(rng, 400, 30.0, 5.0)
        edges = minimum_spanning_tree(sub)
        assert (edges[:, 2] <= sub.h_max).all()


class TestMstToLinkage:
    def test_two_nodes(self):
        z = mst_to_linkage(np.array([[0.0, 1.0, 5.0]]), 2)
        assert z.merges.tolist() == [[0.0, 1.0, 5.0, 2.0]]

    def test_three_node_chain(self):
        edges = np.array([[0.0, 1.0, 1.0], [1.0, 2.0, 1.0]])
        z = mst_to_linkage(edges, 3)
        z.check()
        assert z.heights.tolist() == [1.0, 1.0]
        assert int(z.merges[-1, 3]) == 3

    def test_rejects_wrong_edge_count(self):
        with pytest.raises(ValueError):
            mst_to_linkage(np.array([[0.0, 1.0, 1.0]]), 3)

    def test_rejects_non_spanning(self):
        edges = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 2.0]])
        with pytest.raises(ValueError, match="non-spanning"):
            mst_to_linkage(edges, 3)

    def test_heights_non_decreasing_and_structure(self):
        rng = np.random.default_rng(3)
        _, _, sub = _largest_connected_subgraph(rng, 500, 40.0, 4.0)
        z = mst_to_linkage(minimum_spanning_tree(sub), sub.n)
        z.check()

    def test_merge_heights_equal_single_linkage_sequence(self):
        """MST edge weights sorted = greedy single-linkage merge heights."""
        rng = np.random.default_rng(14)
        ps, members, sub = _largest_connected_subgraph(rng, 120, 14.0, 6.0)
        if sub.n < 5 or sub.n > 50:
            ps, members, sub = _largest_connected_subgraph(rng, 90, 16.0, 7.0)
        z = mst_to_linkage(minimum_spanning_tree(sub), sub.n)
        square = square_from_pointset(PointSet(ps.coords[members], EUCLIDEAN))
        want = single_linkage_merge_heights(square)
        np.testing.assert_allclose(np.sort(z.heights), np.sort(want), rtol=1e-12)


def test_mst_path_allocation_stays_linear():
    """Working storage across the whole MST path is O(n + m), not O(n^2)."""
    from geohac.synth import generate_chain

    ps = generate_chain(20_000, h_max=1.0, seed=0)
    g = build_distance_graph(ps, 1.0)
    part = connected_components(g)
    assert part.K == 1
    acct = AllocationAccountant()
    sub = extract_component_subgraph(g, part.members[0])
    with acct.track(sub.storage_entries):
        edges = minimum_spanning_tree(sub, accountant=acct)
        mst_to_linkage(edges, sub.n, accountant=acct)
    bound = 32 * (g.n + g.m)
    assert acct.peak_entries <= bound
    assert acct.peak_entries < g.n * g.n // 100

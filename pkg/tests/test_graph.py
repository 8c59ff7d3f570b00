import numpy as np
import pytest

from conftest import random_planar
from oracles import bfs_components, brute_force_pairs

from geohac.graph import (
    build_distance_graph,
    connected_components,
    extract_component_condensed,
    extract_component_subgraph,
    read_edge_list,
    write_edge_list,
)
from geohac.metrics import EUCLIDEAN, PointSet, pair_distances
from geohac.synth import ScenarioSpec, generate_gaussian_mixture


class TestBuildDistanceGraph:
    def test_hand_enumeration(self, four_points):
        g = build_distance_graph(four_points, 3.0)
        assert g.m == 3
        i, j, w = g.upper_triangle()
        assert list(zip(i.tolist(), j.tolist(), w.tolist())) == [
            (0, 1, 1.0),
            (0, 2, 2.0),
            (1, 2, 1.0),
        ]

    def test_all_far_apart_empty(self):
        ps = PointSet(np.array([[0.0, 0.0], [100.0, 0.0], [0.0, 100.0]]), EUCLIDEAN)
        g = build_distance_graph(ps, 3.0)
        assert g.m == 0

    def test_symmetry_and_sorted_rows(self):
        rng = np.random.default_rng(0)
        g = build_distance_graph(random_planar(rng, 300), 8.0)
        rows = np.repeat(np.arange(g.n), np.diff(g.row_offsets))
        forward = set(zip(rows.tolist(), g.col_indices.tolist()))
        assert all((b, a) in forward for a, b in forward)
        for i in range(g.n):
            cols, w = g.neighbors(i)
            assert (np.diff(cols) > 0).all()
            assert (w <= g.h_max).all() and (w >= 0).all()
        assert not any(a == b for a, b in forward)

    def test_moderate_scenario_edge_count_matches_brute_force(self):
        ps = generate_gaussian_mixture(ScenarioSpec(name="moderate", n=400, h_max=5.0, seed=1))
        g = build_distance_graph(ps, 5.0)
        bi, _, _ = brute_force_pairs(ps, 5.0)
        assert g.m == bi.size

    def test_storage_is_theta_n_plus_m(self):
        rng = np.random.default_rng(3)
        g = build_distance_graph(random_planar(rng, 500), 6.0)
        assert g.row_offsets.size == g.n + 1
        assert g.col_indices.size == 2 * g.m
        assert g.weights.size == 2 * g.m
        assert g.storage_entries == (g.n + 1) + 4 * g.m
        assert g.mean_degree == 2 * g.m / g.n


class TestConnectedComponents:
    def test_empty_graph_all_singletons(self):
        ps = PointSet(np.arange(10, dtype=float).reshape(5, 2) * 100, EUCLIDEAN)
        part = connected_components(build_distance_graph(ps, 1.0))
        assert part.K == 5
        assert part.component_id.tolist() == list(range(5))

    def test_four_point_example(self, four_points):
        part = connected_components(build_distance_graph(four_points, 3.0))
        assert part.K == 2
        assert [m.tolist() for m in part.members] == [[0, 1, 2], [3]]

    @pytest.mark.parametrize("seed", range(3))
    def test_matches_bfs_oracle(self, seed):
        rng = np.random.default_rng(seed)
        ps = random_planar(rng, 2000, side=200.0)
        g = build_distance_graph(ps, 6.0)
        part = connected_components(g)
        i, j, _ = g.upper_triangle()
        assert part.component_id.tolist() == bfs_components(g.n, i, j).tolist()

    def test_members_partition_nodes(self):
        rng = np.random.default_rng(9)
        g = build_distance_graph(random_planar(rng, 400, side=80.0), 5.0)
        part = connected_components(g)
        seen = np.concatenate(part.members)
        assert np.sort(seen).tolist() == list(range(g.n))
        for k, members in enumerate(part.members):
            assert (np.diff(members) > 0).all() or members.size == 1
            assert (part.component_id[members] == k).all()

    def test_cross_component_separation(self):
        """Every pair in different components is farther apart than h_max."""
        rng = np.random.default_rng(4)
        ps = random_planar(rng, 500, side=100.0)
        h = 6.0
        part = connected_components(build_distance_graph(ps, h))
        idx = rng.integers(0, ps.n, size=(4000, 2))
        different = part.component_id[idx[:, 0]] != part.component_id[idx[:, 1]]
        d = pair_distances(ps.coords, ps.metric, idx[different, 0], idx[different, 1])
        assert (d > h).all()


class TestExtractCondensed:
    def test_hand_example(self, four_points):
        g = build_distance_graph(four_points, 3.0)
        part = connected_components(g)
        cond = extract_component_condensed(g, four_points, part.members[0])
        assert cond.tolist() == [1.0, 2.0, 1.0]

    def test_two_node_component(self):
        ps = PointSet(np.array([[0.0, 0.0], [0.0, 7.0]]), EUCLIDEAN)
        g = build_distance_graph(ps, 10.0)
        cond = extract_component_condensed(g, ps, np.array([0, 1]))
        assert cond.tolist() == [7.0]

    def test_rejects_singleton(self, four_points):
        g = build_distance_graph(four_points, 3.0)
        with pytest.raises(ValueError):
            extract_component_condensed(g, four_points, np.array([3]))

    def test_matches_dense_restriction_and_may_exceed_h_max(self):
        # A chain: connected within h_max but with long-range pairs beyond it.
        coords = np.column_stack([np.arange(50) * 0.9, np.zeros(50)])
        ps = PointSet(coords, EUCLIDEAN)
        g = build_distance_graph(ps, 1.0)
        part = connected_components(g)
        assert part.K == 1
        cond = extract_component_condensed(g, ps, part.members[0])
        i, j = np.triu_indices(50, k=1)
        assert (cond == pair_distances(coords, EUCLIDEAN, i, j)).all()
        assert cond.max() > g.h_max

    def test_reproduces_graph_edge_weights_exactly(self):
        rng = np.random.default_rng(5)
        ps = random_planar(rng, 300, side=40.0)
        g = build_distance_graph(ps, 5.0)
        part = connected_components(g)
        from geohac.linkage import condensed_index

        for members in part.members:
            if members.size < 2:
                continue
            cond = extract_component_condensed(g, ps, members)
            local = {int(v): k for k, v in enumerate(members)}
            sub_i, sub_j, w = extract_component_subgraph(g, members).upper_triangle()
            got = cond[condensed_index(sub_i, sub_j, members.size)]
            assert (got == w).all()


class TestExtractSubgraph:
    def test_singleton(self, four_points):
        g = build_distance_graph(four_points, 3.0)
        sub = extract_component_subgraph(g, np.array([3]))
        assert sub.n == 1 and sub.m == 0

    def test_three_node_component(self, four_points):
        g = build_distance_graph(four_points, 3.0)
        sub = extract_component_subgraph(g, np.array([0, 1, 2]))
        assert sub.n == 3 and sub.m == 3
        _, _, w = sub.upper_triangle()
        assert sorted(w.tolist()) == [1.0, 1.0, 2.0]

    def test_edge_multiset_preserved_under_relabeling(self):
        rng = np.random.default_rng(6)
        ps = random_planar(rng, 400, side=60.0)
        g = build_distance_graph(ps, 7.0)
        part = connected_components(g)
        gi, gj, gw = g.upper_triangle()
        for members in part.members:
            sub = extract_component_subgraph(g, members)
            si, sj, sw = sub.upper_triangle()
            back = members[si], members[sj]
            in_comp = np.isin(gi, members)
            want = sorted(zip(gi[in_comp].tolist(), gj[in_comp].tolist(), gw[in_comp].tolist()))
            got = sorted(zip(back[0].tolist(), back[1].tolist(), sw.tolist()))
            assert got == want


def test_edge_list_round_trip(tmp_path, four_points):
    g = build_distance_graph(four_points, 3.0)
    path = tmp_path / "edges.csv"
    write_edge_list(path, g)
    i, j, d = read_edge_list(path)
    gi, gj, gw = g.upper_triangle()
    assert i.tolist() == gi.tolist()
    assert j.tolist() == gj.tolist()
    assert (d == gw).all()

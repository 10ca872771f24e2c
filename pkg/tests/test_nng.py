import math

import numpy as np
import pytest

from nndt.nng import (
    compute_spread,
    connected_components,
    nearest_neighbor_graph,
)
from nndt.oracle import brute_nng


class TestNearestNeighborGraph:
    def test_three_collinear(self):
        g = nearest_neighbor_graph([(0, 0), (1, 0), (5, 0)])
        assert g.nn == {0: 1, 1: 0, 2: 1}

    def test_tie_breaks_to_smaller_id(self):
        g = nearest_neighbor_graph([(0, 0), (1, 0), (-1, 0)])
        assert g.nn[0] == 1

    def test_requires_two_points(self):
        with pytest.raises(ValueError):
            nearest_neighbor_graph([(0, 0)])

    def test_matches_brute_force(self):
        rng = np.random.default_rng(5)
        pts = [tuple(p) for p in rng.random((2000, 2))]
        assert nearest_neighbor_graph(pts).nn == brute_nng(pts).nn

    def test_matches_brute_force_on_grid_ties(self):
        g = [(float(i), float(j)) for i in range(20) for j in range(20)]
        assert nearest_neighbor_graph(g).nn == brute_nng(g).nn

    def test_independent_of_quantization_resolution(self):
        rng = np.random.default_rng(6)
        pts = [tuple(p) for p in rng.random((300, 2))]
        base = nearest_neighbor_graph(pts).nn
        for bits in (1, 2, 5, 20):
            assert nearest_neighbor_graph(pts, bits=bits).nn == base

    def test_custom_ids(self):
        ids = [7, 3, 9]
        g = nearest_neighbor_graph([(0, 0), (1, 0), (5, 0)], ids=ids)
        assert g.nn == {7: 3, 3: 7, 9: 3}

    def test_out_degree_one_and_no_self_loops(self):
        rng = np.random.default_rng(7)
        pts = [tuple(p) for p in rng.random((500, 2))]
        g = nearest_neighbor_graph(pts)
        assert len(g.nn) == 500
        assert all(p != q for p, q in g.nn.items())

    def test_in_degree_bounded_by_kissing_number(self):
        rng = np.random.default_rng(8)
        pts = [tuple(p) for p in rng.random((1500, 2))]
        g = nearest_neighbor_graph(pts)
        indeg = {}
        for _, q in g.nn.items():
            indeg[q] = indeg.get(q, 0) + 1
        assert max(indeg.values()) <= 6

    def test_clustered_adversarial(self):
        rng = np.random.default_rng(9)
        blob1 = rng.random((150, 2)) * 1e-6
        blob2 = rng.random((150, 2)) * 1e-6 + 1e6
        pts = [tuple(p) for p in np.vstack([blob1, blob2])]
        assert nearest_neighbor_graph(pts).nn == brute_nng(pts).nn


class TestConnectedComponents:
    def test_single_component(self):
        g = nearest_neighbor_graph([(0, 0), (1, 0), (5, 0)])
        comps = connected_components(g, lambda pid: False)
        assert len(comps.components) == 1
        c = comps.components[0]
        assert c.members == [0, 1, 2]
        assert not c.has_s
        assert c.first_t == 0

    def test_two_pairs_one_with_s(self):
        pts = [(0, 0), (0.1, 0), (100, 0), (100.1, 0)]
        g = nearest_neighbor_graph(pts)
        comps = connected_components(g, lambda pid: pid == 0)
        assert len(comps.components) == 2
        flags = [c.has_s for c in comps.components]
        assert flags == [True, False]
        assert comps.components[0].first_t is None
        assert comps.components[1].first_t == 2

    def test_first_t_is_min_member(self):
        g = nearest_neighbor_graph([(0, 0), (0.1, 0), (0.2, 0)], ids=[7, 3, 9])
        comps = connected_components(g, lambda pid: False)
        assert comps.components[0].first_t == 3

    def test_every_component_has_at_least_two_vertices(self):
        rng = np.random.default_rng(10)
        pts = [tuple(p) for p in rng.random((800, 2))]
        g = nearest_neighbor_graph(pts)
        comps = connected_components(g, lambda pid: False)
        assert all(len(c.members) >= 2 for c in comps.components)
        assert sum(len(c.members) for c in comps.components) == 800

    def test_distinct_distances_give_one_mutual_pair_per_component(self):
        rng = np.random.default_rng(11)
        pts = [tuple(p) for p in rng.random((600, 2))]
        g = nearest_neighbor_graph(pts)
        comps = connected_components(g, lambda pid: False)
        for c in comps.components:
            mutual = sum(
                1
                for p in c.members
                if g.nn[p] in c.members and g.nn[g.nn[p]] == p and p < g.nn[p]
            )
            assert mutual == 1


class TestSpread:
    def test_two_points(self):
        est = compute_spread([(0, 0), (1, 0)])
        assert est.value == 1.0
        assert est.min_distance == 1.0
        assert est.bbox_diagonal == 1.0

    def test_collinear_exact_diagonal(self):
        assert compute_spread([(0, 0), (1, 0), (3, 0)]).value == 3.0

    def test_min_distance_matches_all_pairs(self):
        rng = np.random.default_rng(12)
        pts = [tuple(p) for p in rng.random((1000, 2))]
        est = compute_spread(pts)
        xs = np.array([p[0] for p in pts])
        ys = np.array([p[1] for p in pts])
        d2 = (xs[:, None] - xs[None, :]) ** 2 + (ys[:, None] - ys[None, :]) ** 2
        np.fill_diagonal(d2, np.inf)
        assert est.min_distance == math.sqrt(d2.min())

    def test_overestimate_factor_reported(self):
        est = compute_spread([(0, 0), (1, 0), (0, 1)])
        assert est.diameter_overestimate_factor == pytest.approx(math.sqrt(2))

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            compute_spread([(0, 0), (0, 0), (1, 1)])

import pytest
from hypothesis import given, settings, strategies as st

from multilocal import (InterLayerEdges, LayerGraph, MultiNetwork, init_frontiers,
                        interlayer_row, neighbors)


def triangle():
    return LayerGraph(3, [(0, 1), (1, 2), (0, 2)])


def clique(n, extra=(), total=None):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges += list(extra)
    return LayerGraph(total or n, edges)


class TestLayerGraph:
    def test_triangle_neighbors(self):
        assert neighbors(triangle(), 1) == [(0, 1.0), (2, 1.0)]

    def test_isolated_node(self):
        g = LayerGraph(3, [(0, 1)])
        assert neighbors(g, 2) == []

    def test_path_endpoint(self):
        g = LayerGraph(3, [(0, 1), (1, 2)])
        assert neighbors(g, 0) == [(1, 1.0)]

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="node out of range"):
            triangle().neighbors(3)
        with pytest.raises(ValueError, match="node out of range"):
            triangle().neighbors(-1)

    def test_self_loops_dropped_with_warning(self, caplog):
        with caplog.at_level("WARNING"):
            g = LayerGraph(2, [(0, 0), (0, 1)])
        assert "self-loop" in caplog.text
        assert g.edge_count == 1

    def test_default_weight_and_rejects(self):
        g = LayerGraph(2, [(0, 1)])
        assert g.neighbors(0) == [(1, 1.0)]
        with pytest.raises(ValueError, match="non-positive weight"):
            LayerGraph(2, [(0, 1, 0.0)])
        with pytest.raises(ValueError, match="conflicting"):
            LayerGraph(2, [(0, 1, 1.0), (1, 0, 2.0)])

    @given(st.sets(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=25))
    def test_symmetry(self, pairs):
        edges = [(u, v, (u + v + 1) * 0.5) for u, v in pairs if u != v]
        g = LayerGraph(10, edges)
        for u in range(10):
            for v, w in g.neighbors(u):
                assert (u, w) in g.neighbors(v)


class TestInterLayer:
    def test_row_lookup(self):
        net = MultiNetwork([LayerGraph(1), LayerGraph(6)], "multi_domain",
                           [(0, 0, 1, 3, 0.6), (0, 0, 1, 5, 0.1)])
        assert interlayer_row(net.inter_matrix(0, 1), 0) == {3: 0.6, 5: 0.1}

    def test_empty_row(self):
        net = MultiNetwork([LayerGraph(2), LayerGraph(2)], "multi_domain",
                           [(0, 0, 1, 1, 0.5)])
        assert interlayer_row(net.inter_matrix(0, 1), 1) == {}

    def test_identity_row(self):
        ident = InterLayerEdges.identity(0, 1, 10)
        assert interlayer_row(ident, 4) == {4: 1.0}
        with pytest.raises(ValueError, match="node out of range"):
            ident.row(10)

    def test_transpose_consistency(self):
        net = MultiNetwork([LayerGraph(2), LayerGraph(4)], "multi_domain",
                           [(0, 1, 1, 2, 0.25)])
        assert net.inter_matrix(1, 0).row(2) == {1: 0.25}

    def test_weights_above_one_rescaled(self, caplog):
        with caplog.at_level("WARNING"):
            net = MultiNetwork([LayerGraph(2), LayerGraph(2)], "multi_domain",
                               [(0, 0, 1, 0, 4.0), (0, 1, 1, 1, 2.0)])
        assert net.inter_matrix(0, 1).row(0) == {0: 1.0}
        assert net.inter_matrix(0, 1).row(1) == {1: 0.5}

    def test_multi_view_rejects_explicit_inter(self):
        with pytest.raises(ValueError, match="identity"):
            MultiNetwork([LayerGraph(2), LayerGraph(2)], "multi_view",
                         [(0, 0, 1, 0, 1.0)])

    def test_multi_view_is_identity(self):
        net = MultiNetwork([LayerGraph(3), LayerGraph(3)], "multi_view")
        assert net.inter_matrix(0, 1).row(2) == {2: 1.0}

    def test_multi_view_needs_shared_node_set(self):
        with pytest.raises(ValueError, match="share one node set"):
            MultiNetwork([LayerGraph(2), LayerGraph(3)], "multi_view")


class TestFrontiers:
    def test_clique_plus_pendant(self):
        # 5-clique {0..4} with pendant chain 4-5, 5-6
        g = clique(5, extra=[(4, 5), (5, 6)], total=7)
        net = MultiNetwork([g], "multi_view")
        view = init_frontiers(net, {0: {0}})
        assert view.core(0) == {0}
        assert view.boundary(0) == {1, 2, 3, 4}
        assert view.shell(0) == {5}

    def test_isolated_seed(self):
        g = LayerGraph(3, [(1, 2)])
        net = MultiNetwork([g], "multi_view")
        view = init_frontiers(net, {0: {0}})
        assert view.boundary(0) == set()
        assert view.shell(0) == set()

    def test_disjoint_cliques_stay_local(self):
        edges = [(i, j) for i in range(5) for j in range(i + 1, 5)]
        edges += [(i, j) for i in range(5, 10) for j in range(i + 1, 10)]
        g = LayerGraph(10, edges)
        net = MultiNetwork([g], "multi_view")
        view = init_frontiers(net, {0: {0}})
        assert view.visited(0) <= set(range(5))
        assert view.visited(0) == set(range(5))

    def test_seed_out_of_range(self):
        net = MultiNetwork([LayerGraph(3)], "multi_view")
        with pytest.raises(ValueError, match="seed not in layer"):
            init_frontiers(net, {0: {7}})

    def test_empty_seed_set(self):
        net = MultiNetwork([LayerGraph(3)], "multi_view")
        with pytest.raises(ValueError, match="empty seed set"):
            init_frontiers(net, {0: set()})

    def test_access_counter_counts_distinct_queries(self):
        g = clique(5, extra=[(4, 5), (5, 6)], total=7)
        net = MultiNetwork([g], "multi_view")
        view = init_frontiers(net, {0: {0}})
        # init queries core (1 node) and boundary (4 nodes)
        assert view.access_count(0) == 5
        view.neighbors(0, 0)
        view.neighbors(0, 1)
        assert view.access_count(0) == 5  # re-queries are free
        view.neighbors(0, 5)
        assert view.access_count(0) == 6

    def test_frontier_disjointness_and_rebuild(self):
        g = clique(5, extra=[(4, 5), (5, 6)], total=7)
        net = MultiNetwork([g], "multi_view")
        view = init_frontiers(net, {0: {0}})
        view.set_core(0, {0, 4})
        view.rebuild_frontiers(0)
        core, nb, sh = view.core(0), view.boundary(0), view.shell(0)
        assert not core & nb and not nb & sh and not core & sh
        assert nb == {1, 2, 3, 5}
        assert sh == {6}

    def test_core_never_shrinks(self):
        net = MultiNetwork([triangle()], "multi_view")
        view = init_frontiers(net, {0: {0, 1}})
        with pytest.raises(ValueError, match="monotonically"):
            view.set_core(0, {0})

    def test_local_edges_cover_incident_pairs_once(self):
        g = triangle()
        net = MultiNetwork([g], "multi_view")
        view = init_frontiers(net, {0: {0}})
        edges = view.local_edges(0)
        assert sorted((i, j) for i, j, _ in edges) == [(0, 1), (0, 2), (1, 2)]

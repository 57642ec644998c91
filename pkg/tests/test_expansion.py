import pytest
from hypothesis import given, settings, strategies as st

from multilocal import LayerGraph, MultiNetwork, init_frontiers
from multilocal.expansion import (adjust_state, blend_vector, build_cross_maps,
                                  expand_core, expansion_threshold,
                                  finalize_communities, unified_index)


def view_over(node_count, edges, seeds, kind="multi_view", layers=1, inter=()):
    graphs = [LayerGraph(node_count, edges) for _ in range(layers)]
    net = MultiNetwork(graphs, kind, inter)
    return net, init_frontiers(net, {w: set(seeds) for w in range(layers)})


def clique_edges(nodes):
    nodes = sorted(nodes)
    return [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]


class TestThreshold:
    def test_mean_of_three(self):
        net, view = view_over(3, [(0, 1), (0, 2)], {0})
        assert expansion_threshold(view, 0, {0: 1.0, 1: 0.5, 2: 0.3}) == pytest.approx(0.6)

    def test_all_equal(self):
        net, view = view_over(3, [(0, 1), (0, 2)], {0})
        assert expansion_threshold(view, 0, {0: 0.5, 1: 0.5, 2: 0.5}) == pytest.approx(0.5)

    def test_singleton_mean(self):
        net, view = view_over(2, [], {0})
        assert expansion_threshold(view, 0, {0: 1.0}) == pytest.approx(1.0)


class TestExpandCore:
    def test_promotes_above_threshold(self):
        net, view = view_over(3, [(0, 1), (0, 2)], {0})
        affil = {0: 1.0, 1: 0.9, 2: 0.1}
        assert expand_core(view, 0, affil)  # threshold 2/3
        assert view.core(0) == {0, 1}
        assert affil[1] == 1.0  # promoted nodes pin at 1

    def test_fixed_point_when_all_below(self):
        net, view = view_over(3, [(0, 1), (0, 2)], {0})
        before_boundary = view.boundary(0)
        assert not expand_core(view, 0, {0: 1.0, 1: 0.2, 2: 0.1})
        assert view.core(0) == {0}
        assert view.boundary(0) == before_boundary

    def test_exactly_at_threshold_stays(self):
        net, view = view_over(2, [(0, 1)], {0})
        # threshold = (1.0 + 0.5) / 2 = 0.75; a node at exactly 0.75 must stay
        affil = {0: 1.0, 1: 0.75}
        assert expansion_threshold(view, 0, affil) == pytest.approx(0.875)
        net2, view2 = view_over(3, [(0, 1), (0, 2)], {0})
        affil2 = {0: 1.0, 1: 0.5, 2: 0.0}
        # threshold exactly 0.5: node 1 sits exactly on it and must not move
        assert expansion_threshold(view2, 0, affil2) == pytest.approx(0.5)
        assert not expand_core(view2, 0, affil2)

    def test_planted_clique_absorbed_in_one_step(self):
        # 5-clique plus two outsiders hanging off node 4
        edges = clique_edges(range(5)) + [(4, 5), (4, 6)]
        net, view = view_over(7, edges, {4})
        affil = {i: 1.0 for i in range(5)}
        affil.update({5: 0.0, 6: 0.0})
        assert expand_core(view, 0, affil)
        assert view.core(0) == {0, 1, 2, 3, 4}

    def test_core_monotone_across_expansions(self):
        edges = clique_edges(range(4)) + [(3, 4)]
        net, view = view_over(5, edges, {0})
        cores = [view.core(0)]
        affil = {0: 1.0, 1: 0.9, 2: 0.9, 3: 0.2, 4: 0.0}
        expand_core(view, 0, affil)
        cores.append(view.core(0))
        expand_core(view, 0, affil)
        cores.append(view.core(0))
        assert cores[0] <= cores[1] <= cores[2]


class TestAdjustState:
    def test_no_growth_is_identity(self):
        net, view = view_over(3, [(0, 1), (0, 2)], {0})
        affils = {0: {0: 1.0, 1: 0.5, 2: 0.5}}
        unified = dict(affils[0])
        cross = build_cross_maps(net, view, 0, [0])
        prev = {0: view.visited(0)}
        a2, u2, c2 = adjust_state(view, net, 0, [0], affils, unified, cross, prev)
        assert a2 == affils and u2 == unified and c2 == cross

    def test_new_shell_node_gets_zero_and_unified_extends(self):
        # seed 0 with boundary {1, 2}; promoting 1 reveals 4 as new shell
        net, view = view_over(5, [(0, 1), (0, 2), (1, 3), (3, 4)], {0})
        affils = {0: {0: 1.0, 1: 0.9, 2: 0.1, 3: 0.0}}
        unified = dict(affils[0])
        cross = build_cross_maps(net, view, 0, [0])
        prev = {0: view.visited(0)}
        assert expand_core(view, 0, affils[0])  # threshold 2/3: node 1 joins
        assert view.core(0) == {0, 1}
        affils, unified, cross = adjust_state(view, net, 0, [0], affils, unified,
                                              cross, prev)
        assert view.boundary(0) == {2, 3}
        assert view.shell(0) == {4}
        assert affils[0][4] == 0.0
        fill = (1.0 + 1.0 + 0.1 + 0.0) / 4  # mean of U after node 1 pinned to 1
        assert unified[4] == pytest.approx(fill)

    def test_new_boundary_node_gets_half(self):
        # jumping the core two hops (directly via the view) exposes a node
        # that enters as boundary without ever having been visited
        net, view = view_over(4, [(0, 1), (1, 2), (2, 3)], {0})
        affils = {0: {0: 1.0, 1: 0.5, 2: 0.0}}
        unified = dict(affils[0])
        cross = build_cross_maps(net, view, 0, [0])
        prev = {0: view.visited(0)}
        view.set_core(0, {0, 1, 2})
        view.rebuild_frontiers(0)
        affils, unified, cross = adjust_state(view, net, 0, [0], affils, unified,
                                              cross, prev)
        assert view.boundary(0) == {3}
        assert affils[0][3] == 0.5


class TestFinalize:
    def test_half_high_half_low(self):
        # four nodes all visited; blend (1,1,0,0) -> mean 0.5 -> first two
        net, view = view_over(4, [(0, 1), (1, 2), (2, 3)], {1})
        affils = {0: {0: 1.0, 1: 1.0, 2: 0.0, 3: 0.0}}
        weights = {0: 1.0}
        cross = build_cross_maps(net, view, 0, [0])
        unified = dict(affils[0])
        comms, blends = finalize_communities(view, net, 0, 1, [0], affils,
                                             weights, unified, cross)
        assert blends[0] == {0: 1.0, 1: 1.0, 2: 0.0, 3: 0.0}
        assert comms[0] == {0, 1}

    def test_uniform_blend_keeps_only_seed(self):
        net, view = view_over(3, [(0, 1), (1, 2), (0, 2)], {0})
        affils = {0: {0: 0.5, 1: 0.5, 2: 0.5}}
        weights = {0: 1.0}
        cross = build_cross_maps(net, view, 0, [0])
        unified = {0: 0.5, 1: 0.5, 2: 0.5}
        comms, _ = finalize_communities(view, net, 0, 0, [0], affils, weights,
                                        unified, cross)
        assert comms[0] == {0}

    def test_blend_range(self):
        net, view = view_over(3, [(0, 1), (0, 2)], {0})
        blend = blend_vector(view, 0, {0: 1.0, 1: 0.3, 2: 0.0}, 0.7,
                             {0: 1.0, 1: 0.1, 2: 0.4})
        assert all(0.0 <= b <= 1.0 for b in blend.values())

    def test_two_disjoint_cliques_recovers_seed_clique(self):
        edges = clique_edges(range(5)) + clique_edges(range(5, 10))
        net, view = view_over(10, edges, {0}, layers=2)
        # plateau state: seed pinned, rest of clique at 0.5
        affils = {w: {0: 1.0, 1: 0.5, 2: 0.5, 3: 0.5, 4: 0.5} for w in range(2)}
        weights = {0: 1.0, 1: 1.0}
        cross = build_cross_maps(net, view, 0, [0, 1])
        unified = dict(affils[0])
        comms, _ = finalize_communities(view, net, 0, 0, [0, 1], affils, weights,
                                        unified, cross)
        assert comms[0] == {0, 1, 2, 3, 4}
        assert comms[1] == {0, 1, 2, 3, 4}


class TestFrontierCorrectness:
    @settings(max_examples=40, deadline=None)
    @given(st.sets(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=20),
           st.integers(0, 7), st.booleans())
    def test_frontiers_match_brute_force(self, pairs, seed, grow):
        edges = [(u, v) for u, v in pairs if u != v]
        g = LayerGraph(8, edges)
        net = MultiNetwork([g], "multi_view")
        view = init_frontiers(net, {0: {seed}})
        core = {seed}
        if grow and view.boundary(0):
            extra = min(view.boundary(0))
            core |= {extra}
            view.set_core(0, core)
            view.rebuild_frontiers(0)
        adj = {u: {v for v, _ in g.neighbors(u)} for u in range(8)}
        want_boundary = set().union(*(adj[c] for c in core)) - core if core else set()
        cn = core | want_boundary
        want_shell = (set().union(*(adj[x] for x in cn)) - cn) if cn else set()
        assert view.boundary(0) == want_boundary
        assert view.shell(0) == want_shell

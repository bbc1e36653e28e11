"""Tests for the gain graph model, validation, walks and switching."""

import pytest

from symrigid.core.gain_graph import (
    GainGraphBuilder,
    GainGraphError,
    ViolationKind,
    Walk,
    WalkError,
    degree_profile,
    edge_subgraph,
    normalize_forest,
    switch,
    validate,
    walk_gain,
)
from symrigid.core.gallery import gallery


def kinds(g):
    return {v.kind for v in validate(g)}


class TestValidate:
    def test_clean_graph(self, figure1):
        assert validate(figure1) == []

    def test_identity_loop(self):
        g = GainGraphBuilder(6).add_vertex("u").add_edge("u", "u", 0).build()
        assert kinds(g) == {ViolationKind.IDENTITY_LOOP}

    def test_loop_at_fixed_vertex(self):
        g = GainGraphBuilder(6).add_vertex("v0", fixed=True).add_edge("v0", "v0", 1).build()
        assert ViolationKind.FIXED_LOOP in kinds(g)

    def test_parallel_edges_at_fixed_vertex(self):
        b = GainGraphBuilder(6).add_vertex("u").add_vertex("v0", fixed=True)
        g = b.add_edge("u", "v0", 0).add_edge("u", "v0", 2).build()
        assert kinds(g) == {ViolationKind.FIXED_PARALLEL}

    def test_opposite_parallel_edges_with_same_gain(self):
        b = GainGraphBuilder(6).add_vertex("u").add_vertex("v")
        g = b.add_edge("u", "v", 1).add_edge("v", "u", 5).build()
        assert kinds(g) == {ViolationKind.PARALLEL_GAIN}

    def test_inverse_loops_clash(self):
        g = GainGraphBuilder(6).add_vertex("u").add_edge("u", "u", 1).add_edge("u", "u", 5).build()
        assert kinds(g) == {ViolationKind.PARALLEL_GAIN}

    def test_two_fixed_vertices(self):
        g = GainGraphBuilder(6).add_vertex("a", fixed=True).add_vertex("b", fixed=True).build()
        assert kinds(g) == {ViolationKind.MULTIPLE_FIXED}

    def test_undeclared_vertex(self):
        with pytest.raises(GainGraphError):
            GainGraphBuilder(6).add_vertex("u").add_edge("u", "w", 1).build()


class TestStructure:
    def test_loops_count_twice(self, counterexample_loop):
        assert counterexample_loop.degree("u") == 4

    def test_components_include_isolated_vertices(self):
        b = GainGraphBuilder(5).add_vertex("u").add_vertex("v0", fixed=True)
        g = b.add_edge("u", "u", 1).build()
        assert [names for names, _ in g.components()] == [("u",), ("v0",)]

    def test_with_changes_drops_incident_edges(self, figure1):
        smaller = figure1.with_changes(remove_vertices=["v"])
        assert smaller.edge_ids == ("e0", "e3")

    def test_hash_ignores_edge_order(self):
        a = GainGraphBuilder(5).add_vertex("u").add_vertex("v")
        a.add_edge("u", "v", 1, "x").add_edge("u", "u", 2, "y")
        b = GainGraphBuilder(5).add_vertex("v").add_vertex("u")
        b.add_edge("u", "u", 2, "y").add_edge("u", "v", 1, "x")
        assert a.build().canonical_hash() == b.build().canonical_hash()

    def test_edge_subgraph_retains_vertices(self, figure1):
        sub = edge_subgraph(figure1, ["e3"], retain=["v0"])
        assert sub.vertex_names == ("v0", "u")
        assert sub.edge_ids == ("e3",)

    def test_degree_profile(self, special_partner):
        profile = degree_profile(special_partner)
        assert (profile.degree_two, profile.degree_three, profile.fixed_degree) == (0, 2, 2)
        assert profile.covers_fixed_vertex()


class TestWalks:
    def test_closed_walk_gain(self, figure1):
        assert walk_gain(figure1, Walk("u", (("e1", 1), ("e2", 1)))).value == 1

    def test_reverse_traversal(self, figure1):
        assert walk_gain(figure1, Walk("u", (("e2", -1),))).value == 5

    def test_broken_walk(self, figure1):
        with pytest.raises(WalkError):
            walk_gain(figure1, Walk("u", (("e0", 1),)))


class TestSwitching:
    def test_closed_walk_gains_survive_switching(self, figure1):
        switched = switch(figure1, {"u": 2, "v": 5})
        walk = Walk("u", (("e1", 1), ("e2", 1)))
        assert walk_gain(switched, walk) == walk_gain(figure1, walk)
        assert walk_gain(switched, Walk("u", (("e3", 1),))).value == 1

    def test_normalize_forest(self, figure1):
        normalized = normalize_forest(figure1, ["e0", "e1"])
        assert normalized.edge("e0").gain.is_identity()
        assert normalized.edge("e1").gain.is_identity()

    def test_normalize_rejects_cycles(self, figure1):
        with pytest.raises(GainGraphError):
            normalize_forest(figure1, ["e1", "e2"])
        with pytest.raises(GainGraphError):
            normalize_forest(figure1, ["e3"])

    def test_gallery_graphs_are_valid(self):
        assert validate(gallery("counterexample-fixed", 10)) == []

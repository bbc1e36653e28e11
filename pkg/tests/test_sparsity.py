"""Tests for the sparsity counts and the independence oracle."""

import itertools
import logging

import pytest

from symrigid.core.classify import classify_alpha
from symrigid.core.cyclic import RepresentationError
from symrigid.core.gain_graph import GainGraphBuilder, GainGraphError, edge_subgraph, switch
from symrigid.core.gallery import gallery
from symrigid.counting.sparsity import (
    CapacityError,
    CountFamily,
    CountSpec,
    check,
    f_value,
    first_violation_touching,
    first_violation_with,
    greedy_tight_spanning,
    in_matroidal_regime,
    independent,
    maximal_independent,
    tight_target,
)


def loops(k, *gains):
    b = GainGraphBuilder(k).add_vertex("u")
    for gain in gains:
        b.add_edge("u", "u", gain)
    return b.build()


@pytest.fixture
def triangle():
    b = GainGraphBuilder(6).add_vertex("a").add_vertex("b").add_vertex("c")
    return b.add_edge("a", "b", 0).add_edge("b", "c", 0).add_edge("c", "a", 0).build()


class TestCountSpec:
    @pytest.mark.parametrize("text", ["plain:2,3", "gain:0,1", "zkj", "zkj:4"])
    def test_parse_and_format(self, text):
        assert str(CountSpec.parse(text)) == text

    def test_family(self):
        assert CountSpec.parse("gain:1,2").family is CountFamily.GAIN

    @pytest.mark.parametrize("text", [
        "tree:1,1", "gain:1", "plain:3,1", "plain:1,4", "zkj:x", "gain:2,1", "gain:0,0", "gain:1,3",
    ])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            CountSpec.parse(text)

    def test_gain_count_range(self):
        assert CountSpec.plain(2, 3).l == 3
        with pytest.raises(ValueError, match=r"\[1, 2\]"):
            CountSpec.gain(0, 3)
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            CountSpec.gain(2, 1)

    def test_with_j_only_binds_zkj(self):
        assert CountSpec.zkj().with_j(3) == CountSpec.zkj(3)
        assert CountSpec.plain(2, 3).with_j(3) == CountSpec.plain(2, 3)


class TestCheck:
    def test_balanced_triangle_under_gain_count(self, triangle):
        verdict = check(triangle, CountSpec.gain(0, 1))
        assert verdict.describe() == "sparse, not tight"
        assert verdict.target == 5

    def test_triangle_is_plain_tight(self, triangle):
        assert check(triangle, CountSpec.plain(2, 3)).tight

    def test_fixed_edge_under_plain_count(self):
        assert check(gallery("base-fixed-edge", 6), CountSpec.plain(0, 1)).tight

    def test_loop_triple_violation(self):
        verdict = check(loops(8, 1, 2, 3), CountSpec.zkj(4))
        assert verdict.describe() == "not sparse"
        assert verdict.witness.edges == ("e0", "e1", "e2")
        assert (verdict.witness.count, verdict.witness.bound) == (3, 2)

    def test_witness_is_smallest(self):
        # a parallel pair breaks the (2,3) count before any larger set
        b = GainGraphBuilder(6).add_vertex("a").add_vertex("b").add_vertex("c")
        b.add_edge("a", "b", 0).add_edge("b", "c", 0).add_edge("a", "b", 1).add_edge("b", "a", 1)
        verdict = check(b.build(), CountSpec.plain(2, 3))
        assert verdict.witness.edges == ("e0", "e2")

    def test_loop_vertex_gain_count(self):
        assert check(gallery("base-loop-vertex", 5), CountSpec.gain(1, 1)).tight

    def test_fixed_vertex_alone_is_tight(self):
        assert check(gallery("base-fixed-vertex", 6), CountSpec.zkj(2)).tight

    def test_zkj_needs_j(self):
        with pytest.raises(RepresentationError):
            check(loops(8, 1), CountSpec.zkj())
        with pytest.raises(RepresentationError):
            check(loops(8, 1), CountSpec.zkj(1))

    def test_capacity(self, triangle):
        with pytest.raises(CapacityError):
            check(triangle, CountSpec.plain(2, 3), cap=2)

    def test_cap_from_environment(self, triangle, monkeypatch):
        monkeypatch.setenv("SYMRIGID_CAP", "2")
        with pytest.raises(CapacityError, match="cap of 2"):
            check(triangle, CountSpec.plain(2, 3))


class TestFValue:
    def test_counterexample_pair(self, counterexample_loop):
        assert f_value(counterexample_loop, ["e0", "e1"], 8, 4) == 2

    def test_sums_over_components(self):
        b = GainGraphBuilder(8).add_vertex("u").add_vertex("w")
        g = b.add_edge("u", "u", 1).add_edge("w", "w", 1).build()
        assert f_value(g, ["e0", "e1"], 8, 4) == 2

    def test_empty_set(self, counterexample_loop):
        with pytest.raises(GainGraphError):
            f_value(counterexample_loop, [], 8, 4)

    def test_tight_target(self, figure1):
        assert tight_target(figure1, CountSpec.zkj(2)) == 4
        assert tight_target(figure1, CountSpec.gain(1, 1)) == 4


class TestOracle:
    def test_independent(self):
        g = loops(8, 1, 2, 3)
        spec = CountSpec.zkj(4)
        assert independent(g, [], spec)
        assert independent(g, ["e0", "e2"], spec)
        assert not independent(g, ["e0", "e1", "e2"], spec)

    def test_first_violation_with(self):
        g = loops(8, 1, 2, 3)
        witness = first_violation_with(g, CountSpec.zkj(4), "e2")
        assert witness.edges == ("e0", "e1", "e2")
        with pytest.raises(GainGraphError):
            first_violation_with(g, CountSpec.zkj(4), "nope")

    def test_first_violation_touching(self):
        g = loops(8, 1, 2, 3)
        spec = CountSpec.zkj(4)
        assert first_violation_touching(g, spec, ["e1", "e2"]).edges == ("e0", "e1", "e2")
        assert first_violation_touching(loops(8, 1, 3), spec, ["e1"]) is None
        with pytest.raises(GainGraphError, match="unknown edge"):
            first_violation_touching(g, spec, ["nope"])

    @pytest.mark.parametrize("order", list(itertools.permutations(["e0", "e1", "e2"])))
    def test_greedy_size_is_order_independent(self, order):
        assert len(maximal_independent(loops(7, 1, 2, 3), CountSpec.zkj(2), order)) == 2

    def test_greedy_tight_spanning(self):
        assert greedy_tight_spanning(loops(5, 1, 2), CountSpec.zkj(2)) == ["e0", "e1"]
        assert greedy_tight_spanning(gallery("base-loop-vertex", 5), CountSpec.zkj(2)) is None

    def test_warns_outside_matroidal_regime(self, caplog):
        with caplog.at_level(logging.WARNING, logger="symrigid.counting.sparsity"):
            greedy_tight_spanning(loops(8, 1, 2, 3), CountSpec.zkj(4))
        assert "matroidal regime" in caplog.text

    @pytest.mark.parametrize("k,expected", [
        (4, True), (6, True), (5, True), (999, True),
        (2, False), (3, False), (8, False), (1001, False),
    ])
    def test_matroidal_regime(self, k, expected):
        assert in_matroidal_regime(k) is expected


def verdict_key(verdict):
    witness = verdict.witness.edges if verdict.witness else None
    return verdict.sparse, verdict.tight, witness


def component_classes(g, j):
    result = []
    for _, ids in g.components():
        if ids:
            found, alpha = classify_alpha(edge_subgraph(g, ids), g.k, j)
            result.append((found.kind, found.group_order, alpha))
    return result


@pytest.mark.slow
class TestProperties:
    @pytest.mark.parametrize("k,j", [(5, 2), (6, 2), (7, 3)])
    def test_switching_preserves_counts_and_classes(self, random_graph, rng, k, j):
        specs = [CountSpec.zkj(j), CountSpec.gain(0, 1), CountSpec.gain(1, 1)]
        for _ in range(34):
            g = random_graph(rng, k, free=3, edges=5, fixed=bool(rng.integers(2)))
            counts = [verdict_key(check(g, spec)) for spec in specs]
            classes = component_classes(g, j)
            for _ in range(10):
                h = switch(g, {v.name: int(rng.integers(k)) for v in g.vertices})
                assert [verdict_key(check(h, spec)) for spec in specs] == counts
                assert component_classes(h, j) == classes

    @pytest.mark.parametrize("k,j", [(5, 2), (7, 2), (7, 3)])
    def test_greedy_rank_does_not_depend_on_order(self, random_graph, rng, k, j):
        spec = CountSpec.zkj(j)
        for _ in range(34):
            g = random_graph(rng, k, free=3, edges=8)
            order = list(g.edge_ids)
            rng.shuffle(order)
            assert len(maximal_independent(g, spec)) == len(maximal_independent(g, spec, order))

    @pytest.mark.parametrize("k,j", [(5, 2), (7, 3)])
    def test_touching_edges_agrees_with_check(self, random_graph, rng, k, j):
        spec = CountSpec.zkj(j)
        for _ in range(20):
            g = random_graph(rng, k, free=3, edges=6)
            last = g.edge_ids[-2:]
            rest = edge_subgraph(g, g.edge_ids[:-2], retain=g.vertex_names)
            if not check(rest, spec).sparse:
                continue
            witness = first_violation_touching(g, spec, last)
            assert (witness is None) == check(g, spec).sparse

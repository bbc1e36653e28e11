"""Tests for extensions, base graphs, reductions, certificates and growth."""

import dataclasses

import numpy as np
import pytest

from symrigid.config import NumericConfig
from symrigid.core.cyclic import RepresentationError
from symrigid.core.gain_graph import GainGraphBuilder, GainGraphError
from symrigid.core.gallery import gallery
from symrigid.counting.sparsity import CountSpec, check
from symrigid.henneberg.bases import (
    S_PLUS_EDGE,
    ZKJ_BASES,
    _four_regular_class,
    labelled_base,
    recognize_base,
)
from symrigid.henneberg.certificate import (
    CertificateError,
    TerminalKind,
    format_certificate,
    replay,
)
from symrigid.henneberg.growth import grow, with_fixed_vertex
from symrigid.henneberg.moves import (
    ExtensionError,
    MoveKind,
    apply_extension,
    apply_reduction,
    ext0,
    ext1,
    extension_preserves_isostatic,
    loop1,
    loop_admissible,
    two_vertex,
)
from symrigid.henneberg.reduction import (
    NotTightError,
    ReductionResult,
    RegimeError,
    SpecialCase,
    find_reduction,
    reduce_to_base,
)
from symrigid.numeric.lifting import sample_configuration
from symrigid.numeric.rigidity import generic_block, sample_frameworks


@pytest.fixture
def loop_pair5():
    return labelled_base("loop-pair", 5, 2)


class TestMoves:
    def test_ext0_keeps_tightness(self, loop_pair5):
        move = ext0(loop_pair5, "w", ("u", 0), ("u", 1))
        extended = apply_extension(loop_pair5, move)
        assert check(extended, CountSpec.zkj(2)).tight
        assert str(move) == "ext0 new=w;at=u,u 0,1"

    def test_reduction_undoes_extension(self, loop_pair5):
        move = ext0(loop_pair5, "w", ("u", 0), ("u", 1))
        assert apply_reduction(apply_extension(loop_pair5, move), move) == loop_pair5

    def test_coincident_attachments_need_distinct_gains(self, loop_pair5):
        with pytest.raises(ExtensionError, match="distinct gains"):
            apply_extension(loop_pair5, ext0(loop_pair5, "w", ("u", 2), ("u", 2)))

    def test_existing_vertex(self, loop_pair5):
        with pytest.raises(ExtensionError, match="already exists"):
            apply_extension(loop_pair5, loop1(loop_pair5, "u", 1, "u"))

    def test_identity_loop(self, loop_pair5):
        with pytest.raises(ExtensionError, match="non-identity"):
            apply_extension(loop_pair5, loop1(loop_pair5, "w", 0, "u"))

    def test_ext1_path_gain(self, figure1):
        move = ext1(figure1, "w", "e2", 2, ("v0", 0))
        extended = apply_extension(figure1, move)
        assert not extended.has_edge("e2")
        assert move.gains() == (2, 3, 0)

    def test_two_vertex_gadget(self):
        v0 = gallery("base-fixed-vertex", 6)
        extended = apply_extension(v0, two_vertex(v0, "u", "v"))
        assert check(extended, CountSpec.zkj(3)).tight

    def test_two_vertex_needs_even_k(self):
        v0 = gallery("base-fixed-vertex", 5)
        with pytest.raises(ExtensionError, match="even"):
            apply_extension(v0, two_vertex(v0, "u", "v"))

    def test_reduction_with_foreign_edges(self, figure1):
        move = ext0(figure1, "v", ("u", 0), ("u", 5))
        with pytest.raises(ExtensionError, match="differ"):
            apply_reduction(figure1, move)


class TestGuards:
    @pytest.mark.parametrize("k,j,gain,at_fixed,expected", [
        (6, 3, 3, False, False),
        (9, 3, 3, True, False),
        (9, 3, 1, True, True),
        (7, 0, 2, True, False),
        (7, 2, 1, False, True),
    ])
    def test_loop_admissible(self, k, j, gain, at_fixed, expected):
        assert loop_admissible(k, j, gain, at_fixed) is expected

    def test_structural_collinearity(self):
        b = GainGraphBuilder(6).add_vertex("u").add_vertex("v0", fixed=True)
        g = b.add_edge("u", "u", 3).add_edge("u", "v0", 0).build()
        move = ext1(g, "w", "e0", 0, ("v0", 0))
        fw = sample_configuration(g, 0)
        assert not extension_preserves_isostatic(g, move, 2, fw)

    def test_generic_ext0_passes(self, loop_pair5):
        move = ext0(loop_pair5, "w", ("u", 0), ("u", 1))
        fw = sample_configuration(loop_pair5, 0)
        assert extension_preserves_isostatic(loop_pair5, move, 2, fw)


class TestBases:
    @pytest.mark.parametrize("k", [5, 7])
    def test_loop_pair_labelling(self, k):
        g = labelled_base("loop-pair", k, 2)
        assert [e.gain.value for e in g.edges] == [1, 2]

    def test_components_are_named(self, loop_pair5):
        assert recognize_base(with_fixed_vertex(loop_pair5), 2) == "loop-pair+fixed-vertex"

    def test_shape_before_four_regular_class(self):
        g = GainGraphBuilder(6).add_vertex("u").add_edge("u", "u", 2).add_edge("u", "u", 3).build()
        assert recognize_base(g, 2) == "loop-pair"
        assert _four_regular_class(g, 2) == S_PLUS_EDGE

    def test_non_base(self, figure1):
        assert recognize_base(figure1, 2) is None


class TestFindReduction:
    def test_special_case(self, special_case):
        found = find_reduction(special_case, 3)
        assert isinstance(found, SpecialCase)
        assert (found.vertex, found.partner) == ("v", "u")
        summary = [
            (b.candidate.tail, b.candidate.head, b.candidate.gain.value, b.edges, b.count, b.bound)
            for b in found.blockers
        ]
        assert summary == [
            ("u", "u", 3, (), 1, 0),
            ("u", "v0", 0, ("e3",), 2, 1),
            ("u", "v0", 3, ("e3",), 2, 1),
        ]

    def test_blockers_hold(self, special_case):
        for blocker in find_reduction(special_case, 3).blockers:
            reduced = special_case.with_changes(
                remove_vertices=["v"], add_edges=[blocker.candidate]
            )
            assert blocker.holds(reduced, 3)

    def test_two_vertex_reduction(self, special_partner):
        found = find_reduction(special_partner, 3)
        assert isinstance(found, ReductionResult)
        assert found.move.kind is MoveKind.TWO_VERTEX
        assert found.move.new_vertices == ("u", "v")
        assert [e.id for e in found.move.edges] == ["e3", "e2", "e0", "e1"]
        assert found.reduced.vertex_names == ("v0",)

    def test_no_reduction_for_four_regular(self, counterexample_loop):
        assert find_reduction(counterexample_loop, 4) is None

    def test_not_tight(self):
        with pytest.raises(NotTightError):
            find_reduction(gallery("base-loop-vertex", 5), 2)


class TestCertificates:
    def test_partner_certificate(self, special_partner):
        cert = reduce_to_base(special_partner, 3)
        assert len(cert.steps) == 1
        assert cert.terminal.kind is TerminalKind.BASE
        assert str(cert.terminal) == "fixed-vertex"
        assert replay(cert).canonical_hash() == special_partner.canonical_hash()

    def test_special_terminal(self, special_case):
        cert = reduce_to_base(special_case, 3)
        assert cert.special
        assert str(cert.terminal) == "special-case at=v"

    def test_text_form(self, special_partner):
        lines = format_certificate(reduce_to_base(special_partner, 3)).splitlines()
        assert lines[0] == f"certificate k=6 j=3 input={special_partner.canonical_hash()}"
        assert lines[1].startswith("step 1 twovertex new=u,v;at=v0 ")
        assert lines[-1] == "terminal fixed-vertex"

    def test_tampered_hash(self, special_partner):
        cert = reduce_to_base(special_partner, 3)
        step = dataclasses.replace(cert.steps[0], result_hash="0" * 16)
        with pytest.raises(CertificateError, match="hash mismatch"):
            replay(dataclasses.replace(cert, steps=(step,)))

    def test_json_fields(self, special_partner):
        data = reduce_to_base(special_partner, 3).to_dict()
        assert data["steps"][0]["kind"] == "twovertex"
        assert data["terminal"]["name"] == "fixed-vertex"

    def test_regime(self, counterexample_loop):
        with pytest.raises(RegimeError):
            reduce_to_base(counterexample_loop, 4)

    def test_middle_j_only(self):
        with pytest.raises(RepresentationError):
            reduce_to_base(gallery("base-loop-vertex", 5), 1)

    def test_not_tight(self):
        with pytest.raises(NotTightError):
            reduce_to_base(gallery("base-loop-vertex", 5), 2)


class TestGrowth:
    def test_same_seed_same_graph(self, loop_pair5):
        config = NumericConfig(trials=3)
        a = grow(loop_pair5, 2, 2, np.random.Generator(np.random.Philox(7)), config=config)
        b = grow(loop_pair5, 2, 2, np.random.Generator(np.random.Philox(7)), config=config)
        assert a.graph == b.graph
        assert len(a.moves) == 2

    def test_grown_graphs_are_tight(self, loop_pair5, rng):
        grown = grow(loop_pair5, 2, 3, rng, config=NumericConfig(trials=3))
        assert check(grown.graph, CountSpec.zkj(2)).tight
        assert len(grown.graph.vertices) > len(loop_pair5.vertices)

    def test_base_must_be_tight(self, rng):
        with pytest.raises(ExtensionError, match="tight base"):
            grow(gallery("base-loop-vertex", 5), 2, 1, rng)

    def test_five_vertex_growth_stays_tight(self, rng):
        base = labelled_base("five-vertex", 5, 2)
        grown = grow(base, 2, 2, rng, config=NumericConfig(trials=3))
        assert check(grown.graph, CountSpec.zkj(2)).tight
        assert len(grown.graph.edges) == len(base.edges) + 4


@pytest.mark.slow
class TestRoundTrip:
    @pytest.mark.parametrize("k,j,base", [
        (5, 2, "loop-pair"), (7, 2, "loop-pair"), (7, 3, "loop-pair"), (6, 2, "loop-pair"),
    ])
    def test_grown_graphs_certify(self, k, j, base):
        config = NumericConfig(trials=4)
        start = labelled_base(base, k, j)
        for seed in range(3):
            rng = np.random.Generator(np.random.Philox(seed))
            grown = grow(with_fixed_vertex(start), j, 3, rng, config=config)
            cert = reduce_to_base(grown.graph, j, config=config)
            assert replay(cert).canonical_hash() == grown.graph.canonical_hash()
            if cert.terminal.kind is TerminalKind.NUMERIC:
                assert cert.terminal.isostatic


@pytest.mark.slow
class TestSufficiency:
    def test_grown_graphs_are_isostatic(self):
        config = NumericConfig(trials=4)
        starts = []
        for k, js in ((4, (2,)), (5, (2,)), (6, (2, 3)), (7, (2, 3)), (9, (2, 4))):
            for j in js:
                for name in ZKJ_BASES:
                    try:
                        starts.append((k, j, labelled_base(name, k, j)))
                    except GainGraphError:
                        continue
        assert {k for k, _, _ in starts} == {4, 5, 6, 7, 9}

        single, total = 0, 0
        for i in range(100):
            k, j, base = starts[i % len(starts)]
            start = with_fixed_vertex(base) if i % 2 else base
            rng = np.random.Generator(np.random.Philox(i))
            grown = grow(start, j, 2, rng, config=config).graph
            block = generic_block(grown, j, sample_frameworks(grown, 20, i, config), config)
            assert block.isostatic, f"k={k} j={j} from {base.vertex_names}"
            for rank in block.trial_ranks:
                total += 1
                if rank == block.rank.rows and block.rank.dimension - rank == block.triv:
                    single += 1
        assert single >= 0.99 * total

"""!
@file henneberg/reduction.py
@brief Reduction search with blocker detection, and certification down to a base graph.

@details
find_reduction tries, vertex by vertex in name order:

1. a 0-reduction at a free vertex of degree 2,
2. a loop-1-reduction at a free vertex of degree 3 carrying a loop, when
   the loop could be put back admissibly,
3. the 1-reductions at free loopless vertices of degree 3, candidates in
   order of (tail, head, gain); a candidate is rejected exactly when some
   connected edge set through the new edge breaks the count, and the
   smallest such set minus the new edge is kept as its blocker,
4. a 2-vertex-reduction at a pair of free vertices joined by a 2-cycle of
   gain k/2 and each joined to the fixed vertex.

When none applies and, for even k and odd j, a degree-3 vertex sits on a
2-cycle of gain k/2 next to the fixed vertex, the search reports the
special case. Every reduced graph is checked to be tight before it is
returned.

Example:
    >>> from symrigid.core.gallery import gallery
    >>> from symrigid.henneberg.reduction import reduce_to_base
    >>> cert = reduce_to_base(gallery("special-partner", 6), j=3)
    >>> str(cert.terminal)
    'fixed-vertex'

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Union

from symrigid.config import NumericConfig
from symrigid.core.cyclic import RepresentationError
from symrigid.core.gain_graph import (
    GainEdge,
    GainGraph,
    degree_profile,
    validate,
)
from symrigid.counting.sparsity import (
    CountSpec,
    check,
    f_value,
    first_violation_with,
    in_matroidal_regime,
)
from symrigid.henneberg.bases import recognize_base
from symrigid.henneberg.certificate import Certificate, Step, Terminal, TerminalKind
from symrigid.henneberg.moves import Move, MoveKind, apply_reduction, loop_admissible
from symrigid.numeric.rigidity import generic_block, sample_frameworks, spec_for

logger = logging.getLogger(__name__)


class RegimeError(ValueError):
    """!
    @brief Raised when certification is asked for outside k in {4, 6} or odd 5 <= k <= 1000.
    """


class NotTightError(ValueError):
    """!
    @brief Raised when the reduction engine is given a graph that is not tight.
    """


@dataclass(frozen=True)
class Blocker:
    """!
    @brief Subgraph showing that a candidate 1-reduction breaks the count.

    @param vertex Vertex whose reduction was attempted
    @param candidate Edge the reduction would add
    @param edges Edge ids of the blocking subgraph in the reduced graph
    @param retained Vertices kept even when no blocking edge touches them
    @param count Edges of the violating set (blocker plus candidate)
    @param bound Value of the count on that set
    """
    vertex: str
    candidate: GainEdge
    edges: tuple[str, ...]
    retained: tuple[str, ...]
    count: int
    bound: int

    def holds(self, reduced: GainGraph, j: int) -> bool:
        """Whether |E(H)| equals the count of H plus the candidate edge."""
        return len(self.edges) == f_value(reduced, self.edges + (self.candidate.id,), reduced.k, j)


@dataclass(frozen=True)
class SpecialCase:
    """!
    @brief Marker for a tight graph with no admissible reduction.

    @param vertex Degree-3 vertex on the 2-cycle of gain k/2
    @param partner Other vertex of the 2-cycle
    @param blockers Blockers found for the candidate 1-reductions at vertex
    """
    vertex: str
    partner: str
    blockers: tuple[Blocker, ...] = ()


@dataclass(frozen=True)
class ReductionResult:
    """!
    @brief A reduction, as the extension that undoes it, and the reduced graph.
    """
    move: Move
    reduced: GainGraph
    blockers: tuple[Blocker, ...] = ()


Reduction = Union[ReductionResult, SpecialCase, None]


def _free_names(g: GainGraph, degree: int) -> list[str]:
    return sorted(v.name for v in g.free_vertices if g.degree(v.name) == degree)


def _tight(g: GainGraph, spec: CountSpec, cap: Optional[int]) -> bool:
    return check(g, spec, cap).tight


def _zero_reduction(g: GainGraph, spec: CountSpec, cap: Optional[int]) -> Optional[ReductionResult]:
    for v in _free_names(g, 2):
        if g.loops_at(v):
            continue
        e1, e2 = g.incident_edges(v)
        move = Move(MoveKind.EXT0, (v,), (e1.other(v), e2.other(v)), (e1, e2))
        reduced = apply_reduction(g, move)
        if _tight(reduced, spec, cap):
            return ReductionResult(move, reduced)
        logger.debug(f"0-reduction at {v} is not tight")
    return None


def _loop_reduction(
    g: GainGraph, j: int, spec: CountSpec, cap: Optional[int]
) -> Optional[ReductionResult]:
    for v in _free_names(g, 3):
        loops = g.loops_at(v)
        if len(loops) != 1:
            continue
        loop = loops[0]
        edge = next(e for e in g.incident_edges(v) if not e.is_loop)
        u = edge.other(v)
        if not loop_admissible(g.k, j, loop.gain, g.is_fixed(u)):
            logger.debug(f"loop-1-reduction at {v}: loop {loop.gain} cannot be put back")
            continue
        move = Move(MoveKind.LOOP1, (v,), (u,), (loop, edge))
        reduced = apply_reduction(g, move)
        if _tight(reduced, spec, cap):
            return ReductionResult(move, reduced)
    return None


def _candidates(g: GainGraph, v: str) -> list[tuple[GainEdge, tuple[GainEdge, GainEdge, GainEdge]]]:
    """Candidate edges of the 1-reductions at v, each with v's edges in move order."""
    incident = g.incident_edges(v)
    new_id = g.fresh_edge_id()
    found = []
    for e1, e2 in itertools.combinations(incident, 2):
        e3 = next(e for e in incident if e.id not in (e1.id, e2.id))
        a, b = e1.other(v), e2.other(v)
        gain = -e1.gain_from(v) + e2.gain_from(v)
        if b < a:
            e1, e2, a, b, gain = e2, e1, b, a, -gain
        if a == b and gain.is_identity():
            continue
        found.append((GainEdge(new_id, a, b, gain), (e1, e2, e3)))
    found.sort(key=lambda item: (item[0].tail, item[0].head, item[0].gain.value))
    return found


def _one_reduction_at(
    g: GainGraph, v: str, spec: CountSpec, cap: Optional[int]
) -> tuple[Optional[ReductionResult], list[Blocker]]:
    blockers: list[Blocker] = []
    for candidate, edges in _candidates(g, v):
        reduced = g.with_changes(remove_vertices=[v], add_edges=[candidate])
        violations = validate(reduced)
        if violations:
            logger.debug(
                f"1-reduction at {v} adding {candidate.tail}-{candidate.head}: {violations[0]}"
            )
            continue
        witness = first_violation_with(reduced, spec, candidate.id, cap)
        if witness is not None:
            blocker = Blocker(
                v,
                candidate,
                tuple(e for e in witness.edges if e != candidate.id),
                (candidate.tail, candidate.head),
                witness.count,
                witness.bound,
            )
            logger.debug(
                f"1-reduction at {v} adding {candidate.tail}-{candidate.head} "
                f"gain {candidate.gain}: blocked by {list(blocker.edges) or blocker.retained}"
            )
            blockers.append(blocker)
            continue
        move = Move(
            MoveKind.EXT1,
            (v,),
            tuple(e.other(v) for e in edges),
            edges,
            (candidate,),
        )
        if _tight(reduced, spec, cap):
            return ReductionResult(move, reduced, tuple(blockers)), blockers
    return None, blockers


def _two_cycle_partner(g: GainGraph, v: str) -> Optional[tuple[str, GainEdge, GainEdge, GainEdge]]:
    """(u, f1, f2, e) when v's edges are a 2-cycle of gain k/2 to free u and an edge e to v0."""
    if g.k % 2 or g.loops_at(v) or g.degree(v) != 3:
        return None
    incident = g.incident_edges(v)
    to_fixed = [e for e in incident if g.is_fixed(e.other(v))]
    if len(to_fixed) != 1:
        return None
    pair = [e for e in incident if e is not to_fixed[0]]
    f1, f2 = pair
    u = f1.other(v)
    if f2.other(v) != u or g.is_fixed(u):
        return None
    if (f1.gain_from(v) - f2.gain_from(v)).value != g.k // 2:
        return None
    return u, f1, f2, to_fixed[0]


def _two_vertex_reduction(
    g: GainGraph, spec: CountSpec, cap: Optional[int]
) -> Optional[ReductionResult]:
    fixed = g.fixed_vertex
    if g.k % 2 or fixed is None:
        return None
    for a in _free_names(g, 3):
        found = _two_cycle_partner(g, a)
        if found is None:
            continue
        b, f1, f2, ea = found
        partner = _two_cycle_partner(g, b)
        if partner is None or partner[0] != a:
            continue
        eb = partner[3]
        move = Move(MoveKind.TWO_VERTEX, (a, b), (fixed.name,), (ea, eb, f1, f2))
        reduced = apply_reduction(g, move)
        if _tight(reduced, spec, cap):
            return ReductionResult(move, reduced)
    return None


def find_reduction(g: GainGraph, j: int, cap: Optional[int] = None) -> Reduction:
    """!
    @brief Find the first admissible reduction of a tight gain graph.

    @param g Tight gain graph for the rho_j count
    @param j Representation index
    @param cap Subset enumeration cap
    @return A ReductionResult, a SpecialCase marker, or None
    @throws NotTightError If g is not tight
    """
    spec = spec_for(g.k, j)
    if not _tight(g, spec, cap):
        raise NotTightError(f"graph is not {spec}-tight")
    if not g.free_vertices:
        return None
    profile = degree_profile(g)
    logger.debug(
        f"degree profile: s={profile.degree_two} t={profile.degree_three} "
        f"deg(v0)={profile.fixed_degree}"
    )

    found = _zero_reduction(g, spec, cap) or _loop_reduction(g, j, spec, cap)
    if found is not None:
        return found

    blocked: dict[str, list[Blocker]] = {}
    for v in _free_names(g, 3):
        if g.loops_at(v):
            continue
        result, blockers = _one_reduction_at(g, v, spec, cap)
        if result is not None:
            return result
        blocked[v] = blockers

    found = _two_vertex_reduction(g, spec, cap)
    if found is not None:
        return found

    if g.k % 2 == 0 and j % 2 == 1:
        for v, blockers in blocked.items():
            partner = _two_cycle_partner(g, v)
            if partner is not None:
                logger.info(f"special case at {v} with partner {partner[0]}")
                return SpecialCase(v, partner[0], tuple(blockers))
    return None


def reduce_to_base(
    g: GainGraph,
    j: int,
    cap: Optional[int] = None,
    config: Optional[NumericConfig] = None,
) -> Certificate:
    """!
    @brief Reduce a tight gain graph step by step to a base graph.

    @details
    Each connected component of the current graph is matched against the
    base catalog; when every component matches, the certificate ends with
    their names. When no reduction applies and the graph is not a base
    graph, the terminal records a numeric isostatic check instead.

    @param g Tight gain graph for the zkj(j) count
    @param j Representation index, 2 <= j <= k-2
    @param cap Subset enumeration cap
    @param config Numeric settings for a numeric terminal
    @return The certificate
    @throws RegimeError If k is outside the certified regime
    @throws RepresentationError If j is out of range
    @throws NotTightError If g is not tight
    """
    k = g.k
    if not in_matroidal_regime(k):
        raise RegimeError(
            f"reduction is certified only for k in {{4, 6}} or odd 5 <= k <= 1000, got k={k}"
        )
    if not 2 <= j <= k - 2:
        raise RepresentationError(f"reduction needs 2 <= j <= k-2, got j={j}, k={k}")
    config = config or NumericConfig()
    spec = spec_for(k, j)
    if not _tight(g, spec, cap):
        raise NotTightError(f"graph is not {spec}-tight")

    steps: list[Step] = []
    current = g
    while True:
        name = recognize_base(current, j)
        if name is not None:
            terminal = Terminal(TerminalKind.BASE, name)
            break
        found = find_reduction(current, j, cap)
        if isinstance(found, SpecialCase):
            terminal = Terminal(TerminalKind.SPECIAL, "special-case", f"at={found.vertex}")
            break
        if found is None:
            frameworks = sample_frameworks(current, config.trials, config.seed, config)
            block = generic_block(current, j, frameworks, config)
            iso = block.isostatic
            terminal = Terminal(TerminalKind.NUMERIC, "numeric", f"iso={str(iso).lower()}", iso)
            break
        steps.append(Step(len(steps) + 1, found.move, current.canonical_hash()))
        logger.info(f"step {len(steps)}: {found.move}")
        current = found.reduced

    logger.info(f"reduction ended after {len(steps)} steps at {terminal}")
    return Certificate(g.canonical_hash(), k, j, tuple(steps), terminal, current)

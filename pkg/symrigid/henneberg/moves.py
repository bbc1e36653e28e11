"""!
@file henneberg/moves.py
@brief The four gain-graph extensions, their inverses and admissibility guards.

@details
A Move records everything needed to apply an extension and to undo it:
the new vertices, the old vertices they attach to, the edges added and,
for a 1-extension, the edge removed. Reductions are represented by the
extension that undoes them, so a certificate can be replayed forwards.

Gains of added edges are read oriented away from the new vertex.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from symrigid.config import NumericConfig
from symrigid.core.cyclic import CyclicGroup, GainLike, rotation, s_set
from symrigid.core.gain_graph import (
    GainEdge,
    GainGraph,
    GainGraphError,
    Vertex,
    validate,
)
from symrigid.numeric.lifting import Framework, sample_configuration, spawn_seeds

logger = logging.getLogger(__name__)


class ExtensionError(ValueError):
    """!
    @brief Raised when a move violates one of its defining clauses.
    """


class MoveKind(Enum):
    EXT0 = "ext0"
    LOOP1 = "loop1"
    EXT1 = "ext1"
    TWO_VERTEX = "twovertex"


@dataclass(frozen=True)
class Move:
    """!
    @brief One extension, with enough data to apply and undo it.

    @param kind Extension kind
    @param new_vertices Names of the added free vertices
    @param attachments Old vertices joined to the new ones
    @param edges Added edges, in the kind's canonical order
    @param removed Edges removed by the move (the edge split by a 1-extension)
    """
    kind: MoveKind
    new_vertices: tuple[str, ...]
    attachments: tuple[str, ...]
    edges: tuple[GainEdge, ...]
    removed: tuple[GainEdge, ...] = ()

    @property
    def vertex(self) -> str:
        return self.new_vertices[0]

    def gains(self) -> tuple[int, ...]:
        """Gains of the added edges, oriented away from the first new vertex they meet."""
        values = []
        for e in self.edges:
            start = e.tail if e.tail in self.new_vertices else e.head
            values.append(e.gain_from(start).value)
        return tuple(values)

    def sites(self) -> str:
        text = f"new={','.join(self.new_vertices)};at={','.join(self.attachments)}"
        if self.removed:
            text += f";drop={','.join(e.id for e in self.removed)}"
        return text

    def __str__(self) -> str:
        gains = ",".join(str(value) for value in self.gains())
        return f"{self.kind.value} {self.sites()} {gains}"


def _fresh_ids(g: GainGraph, count: int, taken: Sequence[str] = ()) -> list[str]:
    used = set(g.edge_ids) | set(taken)
    ids: list[str] = []
    n = len(g.edges)
    while len(ids) < count:
        candidate = f"e{n}"
        if candidate not in used:
            ids.append(candidate)
            used.add(candidate)
        n += 1
    return ids


def _edge_from(edge_id: str, v: str, other: str, gain: GainLike, g: GainGraph) -> GainEdge:
    return GainEdge(edge_id, v, other, g.group(int(gain)))


def ext0(g: GainGraph, v: str, first: tuple[str, GainLike], second: tuple[str, GainLike]) -> Move:
    """!
    @brief A 0-extension adding v with edges to two old vertices.

    @param first (attachment, gain from v)
    @param second (attachment, gain from v)
    """
    ids = _fresh_ids(g, 2)
    edges = (
        _edge_from(ids[0], v, first[0], first[1], g),
        _edge_from(ids[1], v, second[0], second[1], g),
    )
    return Move(MoveKind.EXT0, (v,), (first[0], second[0]), edges)


def loop1(g: GainGraph, v: str, loop_gain: GainLike, u: str, gain: GainLike = 0) -> Move:
    """A loop-1-extension adding v with a loop and one edge to u."""
    ids = _fresh_ids(g, 2)
    edges = (
        _edge_from(ids[0], v, v, loop_gain, g),
        _edge_from(ids[1], v, u, gain, g),
    )
    return Move(MoveKind.LOOP1, (v,), (u,), edges)


def ext1(
    g: GainGraph,
    v: str,
    edge_id: str,
    gain: GainLike,
    third: tuple[str, GainLike],
) -> Move:
    """!
    @brief A 1-extension splitting an edge (v1, v2, a) through the new vertex v.

    @details
    The edges to v1 and v2 get gains g1 and g1 + a, so that the path
    v1, v, v2 has the gain a of the removed edge.

    @param edge_id Edge to split
    @param gain Gain g1 of the new edge towards the split edge's tail
    @param third (attachment, gain from v) of the third new edge
    """
    e = g.edge(edge_id)
    ids = _fresh_ids(g, 3)
    g1 = int(gain)
    edges = (
        _edge_from(ids[0], v, e.tail, g1, g),
        _edge_from(ids[1], v, e.head, g1 + e.gain.value, g),
        _edge_from(ids[2], v, third[0], third[1], g),
    )
    return Move(MoveKind.EXT1, (v,), (e.tail, e.head, third[0]), edges, (e,))


def two_vertex(
    g: GainGraph,
    v1: str,
    v2: str,
    x: Optional[str] = None,
    gains: tuple[GainLike, GainLike] = (0, 0),
    cycle_gain: GainLike = 0,
) -> Move:
    """!
    @brief A 2-vertex-extension at the fixed vertex.

    @details
    Adds v1 and v2, each joined to the fixed vertex x, and a 2-cycle
    (v1, v2, c), (v2, v1, k/2 - c) of total gain k/2.
    """
    if x is None:
        fixed = g.fixed_vertex
        if fixed is None:
            raise ExtensionError("2-vertex-extension needs a fixed vertex")
        x = fixed.name
    ids = _fresh_ids(g, 4)
    half = g.k // 2
    c = int(cycle_gain)
    edges = (
        _edge_from(ids[0], v1, x, gains[0], g),
        _edge_from(ids[1], v2, x, gains[1], g),
        _edge_from(ids[2], v1, v2, c, g),
        _edge_from(ids[3], v2, v1, half - c, g),
    )
    return Move(MoveKind.TWO_VERTEX, (v1, v2), (x,), edges)


def _joins(e: GainEdge, new: str, old: str) -> bool:
    return set(e.endpoints()) == {new, old}


def _check_shape(g: GainGraph, m: Move) -> None:
    """Raise ExtensionError naming the first violated clause of the move."""
    for name in m.new_vertices:
        if g.has_vertex(name):
            raise ExtensionError(f"{m.kind.value}: vertex {name} already exists")
    for name in m.attachments:
        if not g.has_vertex(name):
            raise ExtensionError(f"{m.kind.value}: unknown attachment {name}")
    for e in m.removed:
        if not g.has_edge(e.id) or g.edge(e.id) != e:
            raise ExtensionError(f"{m.kind.value}: edge {e.id} to remove is not in the graph")

    k = g.k
    if m.kind is MoveKind.EXT0:
        if len(m.new_vertices) != 1 or len(m.edges) != 2 or m.removed:
            raise ExtensionError("ext0: adds one vertex and two edges")
        v = m.vertex
        for e, u in zip(m.edges, m.attachments):
            if e.is_loop or not _joins(e, v, u):
                raise ExtensionError(f"ext0: edge {e.id} must join {v} to {u}")
        if m.attachments[0] == m.attachments[1]:
            if g.is_fixed(m.attachments[0]):
                raise ExtensionError("ext0: coincident attachments must be free")
            a, b = (e.gain_from(v) for e in m.edges)
            if a == b:
                raise ExtensionError("ext0: coincident attachments need distinct gains")

    elif m.kind is MoveKind.LOOP1:
        if len(m.new_vertices) != 1 or len(m.edges) != 2 or m.removed:
            raise ExtensionError("loop1: adds one vertex, a loop and one edge")
        loop, edge = m.edges
        v = m.vertex
        if not loop.is_loop or loop.tail != v:
            raise ExtensionError(f"loop1: first edge must be a loop at {v}")
        if loop.gain.is_identity():
            raise ExtensionError("loop1: the new loop needs a non-identity gain")
        if edge.is_loop or not _joins(edge, v, m.attachments[0]):
            raise ExtensionError(f"loop1: second edge must join {v} to {m.attachments[0]}")

    elif m.kind is MoveKind.EXT1:
        if len(m.new_vertices) != 1 or len(m.edges) != 3 or len(m.removed) != 1:
            raise ExtensionError("ext1: removes one edge and adds one vertex with three edges")
        v = m.vertex
        removed = m.removed[0]
        e1, e2, e3 = m.edges
        for e, u in zip(m.edges, m.attachments):
            if e.is_loop or not _joins(e, v, u):
                raise ExtensionError(f"ext1: edge {e.id} must join {v} to {u}")
        if (e1.other(v), e2.other(v)) != (removed.tail, removed.head):
            raise ExtensionError("ext1: first two edges must reach the ends of the removed edge")
        if (-e1.gain_from(v) + e2.gain_from(v)) != removed.gain:
            raise ExtensionError(
                f"ext1: gains {e1.gain_from(v)}, {e2.gain_from(v)} do not compose to "
                f"the removed gain {removed.gain}"
            )

    elif m.kind is MoveKind.TWO_VERTEX:
        if k % 2:
            raise ExtensionError("twovertex: needs an even group order")
        fixed = g.fixed_vertex
        if fixed is None:
            raise ExtensionError("twovertex: needs a fixed vertex")
        if len(m.new_vertices) != 2 or len(m.edges) != 4 or m.removed:
            raise ExtensionError("twovertex: adds two vertices and four edges")
        v1, v2 = m.new_vertices
        x = m.attachments[0]
        if x != fixed.name:
            raise ExtensionError("twovertex: both new vertices attach to the fixed vertex")
        e1, e2, f1, f2 = m.edges
        if not (_joins(e1, v1, x) and _joins(e2, v2, x)):
            raise ExtensionError(f"twovertex: first two edges must join {v1} and {v2} to {x}")
        if not (_joins(f1, v1, v2) and _joins(f2, v1, v2)):
            raise ExtensionError(f"twovertex: last two edges must join {v1} and {v2}")
        if (f1.gain_from(v1) - f2.gain_from(v1)).value != k // 2:
            raise ExtensionError("twovertex: the 2-cycle must have gain k/2")


def apply_extension(g: GainGraph, m: Move) -> GainGraph:
    """!
    @brief Apply an extension.

    @param g Gain graph
    @param m Move whose clauses hold against g
    @return The extended graph, which passes validate()
    @throws ExtensionError Naming the violated clause
    """
    _check_shape(g, m)
    extended = g.with_changes(
        add_vertices=[Vertex(name) for name in m.new_vertices],
        add_edges=m.edges,
        remove_edges=[e.id for e in m.removed],
    )
    violations = validate(extended)
    if violations:
        raise ExtensionError(f"{m.kind.value}: result is not a gain graph ({violations[0]})")
    return extended


def apply_reduction(g: GainGraph, m: Move) -> GainGraph:
    """!
    @brief Undo an extension: drop its vertices and restore its removed edges.

    @throws ExtensionError If g does not contain exactly the move's new edges
            at its new vertices
    """
    for name in m.new_vertices:
        if not g.has_vertex(name):
            raise ExtensionError(f"{m.kind.value}: vertex {name} is not in the graph")
    incident = {e.id for name in m.new_vertices for e in g.incident_edges(name)}
    if incident != {e.id for e in m.edges}:
        raise ExtensionError(f"{m.kind.value}: edges at {','.join(m.new_vertices)} differ")
    try:
        return g.with_changes(remove_vertices=m.new_vertices, add_edges=m.removed)
    except GainGraphError as e:
        raise ExtensionError(f"{m.kind.value}: cannot restore removed edges: {e}") from e


def _targets(fw: Framework, m: Move) -> list[np.ndarray]:
    v = m.vertex
    points = []
    for e in m.edges:
        other = e.other(v)
        points.append(rotation(e.gain_from(v)) @ fw.representative(other))
    return points


def _collinear(points: Sequence[np.ndarray], tolerance: float) -> bool:
    a, b, c = points
    ab, ac = b - a, c - a
    return abs(ab[0] * ac[1] - ab[1] * ac[0]) < tolerance


def _structurally_collinear(g: GainGraph, m: Move) -> bool:
    v = m.vertex
    e1, e2, e3 = m.edges
    u = e3.other(v)
    if e1.other(v) != e2.other(v) or g.is_fixed(e1.other(v)) or not g.is_fixed(u):
        return False
    return (e2.gain_from(v) - e1.gain_from(v)).value * 2 == g.k


def loop_admissible(k: int, j: int, loop_gain: GainLike, at_fixed: bool) -> bool:
    """!
    @brief Conditions C2 and C3 for a new loop.

    @param k Group order
    @param j Representation index
    @param loop_gain Gain of the new loop
    @param at_fixed Whether the new vertex's other edge goes to the fixed vertex
    """
    gain = CyclicGroup(k)(int(loop_gain))
    if k % 2 == 0 and j % 2 == 1 and gain.value == k // 2:
        return False
    if at_fixed and (j == 0 or gain.order() in s_set(k, j, 0)):
        return False
    return True


def extension_preserves_isostatic(
    g: GainGraph,
    m: Move,
    j: int,
    fw: Framework,
    config: Optional[NumericConfig] = None,
    resamples: int = 3,
) -> bool:
    """!
    @brief Guard conditions under which an extension keeps a graph rho_j-isostatic.

    @details
    C1 (0- and 1-extensions): the neighbour positions seen from the new
    vertex, tau(g_i) p(u_i), must be distinct (0-extension) or not
    collinear (1-extension). When the two split endpoints coincide at a
    free vertex, the third edge goes to the fixed vertex and the two gains
    differ by k/2, the three points always lie on a line through the
    origin and no resampling helps. C2 (loop-1): the loop gain is not k/2
    when k is even and j odd. C3 (loop-1 at the fixed vertex): j != 0 and
    the loop's subgroup order is not in S_0(k, j).

    @param g Graph before the move
    @param m Move
    @param j Representation index
    @param fw Framework realising g
    @param config Numeric settings (collinearity tolerance, seeds)
    @param resamples Fresh configurations tried when C1 fails numerically
    @return True when every applicable condition holds
    """
    config = config or NumericConfig()
    k = g.k

    if m.kind is MoveKind.LOOP1:
        loop, edge = m.edges
        return loop_admissible(k, j, loop.gain, g.is_fixed(edge.other(m.vertex)))

    if m.kind is MoveKind.TWO_VERTEX:
        return True

    if m.kind is MoveKind.EXT1 and _structurally_collinear(g, m):
        logger.debug(f"C1 fails structurally for {m}")
        return False

    tolerance = config.collinearity_tolerance
    seeds = spawn_seeds(config.seed + 1, resamples)
    current = fw
    for attempt in range(resamples + 1):
        points = _targets(current, m)
        if m.kind is MoveKind.EXT0:
            ok = np.linalg.norm(points[0] - points[1]) > tolerance
        else:
            ok = not _collinear(points, tolerance)
        if ok:
            return True
        if attempt == resamples:
            break
        logger.warning(f"C1 collinear targets for {m}; resampling ({attempt + 1}/{resamples})")
        current = sample_configuration(g, seeds[attempt], config)
    return False

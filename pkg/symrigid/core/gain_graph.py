"""!
@file core/gain_graph.py
@brief The Gamma-gain graph data model.

@details
A gain graph is a directed multigraph whose edges carry elements of a cyclic
group, with at most one fixed vertex. Values are immutable: every operation
that changes a graph returns a new one. Orientation is data, but an edge
and its reversal labelled with the inverse gain denote the same object, so
all parallel-edge tests compare gains oriented away from a common endpoint.

@section gain_graph_example Example Usage
@code{.py}
from symrigid.core.cyclic import CyclicGroup
from symrigid.core.gain_graph import GainGraphBuilder, validate

builder = GainGraphBuilder(CyclicGroup(8))
builder.add_vertex("v")
builder.add_edge("v", "v", 1)
builder.add_edge("v", "v", 3)
graph = builder.build()
assert validate(graph) == []
@endcode

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional

import networkx as nx

from symrigid.core.cyclic import CyclicGroup, GainLike, GroupElement


class GainGraphError(ValueError):
    """!
    @brief Structural input error: unknown vertex or edge, cyclic forest, bad walk.
    """


class WalkError(GainGraphError):
    """!
    @brief Raised when a walk takes a step along a non-incident edge.
    """


class VertexKind(Enum):
    """!
    @brief Whether a vertex orbit is free or fixed by every rotation.
    """
    FREE = "free"
    FIXED = "fixed"


@dataclass(frozen=True)
class Vertex:
    name: str
    kind: VertexKind = VertexKind.FREE

    @property
    def is_fixed(self) -> bool:
        return self.kind is VertexKind.FIXED


@dataclass(frozen=True)
class GainEdge:
    """!
    @brief A directed edge (tail, head) labelled with a group element.

    @param id Stable identifier, unique within a graph
    @param tail Name of the tail vertex
    @param head Name of the head vertex
    @param gain Group label psi(e)
    """
    id: str
    tail: str
    head: str
    gain: GroupElement

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def endpoints(self) -> tuple[str, str]:
        return (self.tail, self.head)

    def other(self, vertex: str) -> str:
        """Endpoint opposite to ``vertex`` (the vertex itself for a loop)."""
        if vertex == self.tail:
            return self.head
        if vertex == self.head:
            return self.tail
        raise GainGraphError(f"edge {self.id} is not incident to {vertex}")

    def gain_from(self, vertex: str) -> GroupElement:
        """!
        @brief Gain of this edge when it is oriented away from ``vertex``.

        @details
        For a loop this is the stored gain; the reversed traversal gives the
        inverse.
        """
        if vertex == self.tail:
            return self.gain
        if vertex == self.head:
            return -self.gain
        raise GainGraphError(f"edge {self.id} is not incident to {vertex}")

    def reversed(self) -> GainEdge:
        return GainEdge(self.id, self.head, self.tail, -self.gain)


@dataclass(frozen=True)
class GainGraph:
    """!
    @brief A Gamma-gain graph (G, psi) with at most one fixed vertex.

    @details
    Construction only checks referential integrity (every edge endpoint is a
    declared vertex, identifiers are unique, gains live in the graph's
    group). The clauses of the gain graph definition are reported by
    validate(), which returns violations as data.

    @param group Cyclic group of gains
    @param vertices Vertices in insertion order
    @param edges Edges in insertion order
    """
    group: CyclicGroup
    vertices: tuple[Vertex, ...] = ()
    edges: tuple[GainEdge, ...] = ()

    def __post_init__(self) -> None:
        names = [v.name for v in self.vertices]
        if len(set(names)) != len(names):
            raise GainGraphError("duplicate vertex name")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise GainGraphError("duplicate edge id")
        known = set(names)
        for e in self.edges:
            if e.tail not in known or e.head not in known:
                raise GainGraphError(f"edge {e.id} references an undeclared vertex")
            if e.gain.k != self.group.k:
                raise GainGraphError(f"edge {e.id} carries a gain from Z_{e.gain.k}")

    @property
    def k(self) -> int:
        return self.group.k

    @cached_property
    def _vertex_index(self) -> dict[str, Vertex]:
        return {v.name: v for v in self.vertices}

    @cached_property
    def _edge_index(self) -> dict[str, GainEdge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> dict[str, tuple[GainEdge, ...]]:
        table: dict[str, list[GainEdge]] = {v.name: [] for v in self.vertices}
        for e in self.edges:
            table[e.tail].append(e)
            if not e.is_loop:
                table[e.head].append(e)
        return {name: tuple(es) for name, es in table.items()}

    @property
    def vertex_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vertices)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def vertex(self, name: str) -> Vertex:
        try:
            return self._vertex_index[name]
        except KeyError:
            raise GainGraphError(f"unknown vertex: {name}") from None

    def edge(self, edge_id: str) -> GainEdge:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise GainGraphError(f"unknown edge: {edge_id}") from None

    def has_vertex(self, name: str) -> bool:
        return name in self._vertex_index

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edge_index

    @property
    def fixed_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.is_fixed)

    @property
    def fixed_vertex(self) -> Optional[Vertex]:
        fixed = self.fixed_vertices
        return fixed[0] if fixed else None

    @property
    def free_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if not v.is_fixed)

    def is_fixed(self, name: str) -> bool:
        return self.vertex(name).is_fixed

    def incident_edges(self, name: str) -> tuple[GainEdge, ...]:
        self.vertex(name)
        return self._incidence[name]

    def degree(self, name: str) -> int:
        """Degree of a vertex, loops counted twice."""
        return sum(2 if e.is_loop else 1 for e in self.incident_edges(name))

    def loops_at(self, name: str) -> tuple[GainEdge, ...]:
        return tuple(e for e in self.incident_edges(name) if e.is_loop)

    def neighbours(self, name: str) -> list[str]:
        """Distinct neighbours other than the vertex itself, in edge order."""
        seen: dict[str, None] = {}
        for e in self.incident_edges(name):
            if not e.is_loop:
                seen.setdefault(e.other(name), None)
        return list(seen)

    def to_multigraph(self, include_fixed: bool = True) -> nx.MultiGraph:
        """!
        @brief Undirected networkx view, keyed by edge id.

        @param include_fixed Whether to keep the fixed vertex and its edges
        @return MultiGraph whose edge data holds the GainEdge under "edge"
        """
        view = nx.MultiGraph()
        for v in self.vertices:
            if include_fixed or not v.is_fixed:
                view.add_node(v.name, kind=v.kind.value)
        for e in self.edges:
            if e.tail in view and e.head in view:
                view.add_edge(e.tail, e.head, key=e.id, edge=e)
        return view

    def components(self) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
        """!
        @brief Connected components as (vertex names, edge ids), in graph order.

        @details
        Isolated vertices form their own components.
        """
        view = self.to_multigraph()
        order = {name: i for i, name in enumerate(self.vertex_names)}
        result = []
        for part in nx.connected_components(view):
            names = tuple(sorted(part, key=order.__getitem__))
            ids = tuple(e.id for e in self.edges if e.tail in part)
            result.append((names, ids))
        result.sort(key=lambda item: order[item[0][0]])
        return result

    def without_vertices(self, names: Iterable[str]) -> GainGraph:
        drop = set(names)
        return GainGraph(
            self.group,
            tuple(v for v in self.vertices if v.name not in drop),
            tuple(e for e in self.edges if e.tail not in drop and e.head not in drop),
        )

    def with_changes(
        self,
        add_vertices: Sequence[Vertex] = (),
        add_edges: Sequence[GainEdge] = (),
        remove_vertices: Iterable[str] = (),
        remove_edges: Iterable[str] = (),
    ) -> GainGraph:
        """!
        @brief Return a graph with vertices and edges removed, then added.

        @details
        Removing a vertex removes its incident edges. Added items are appended
        after the surviving ones, preserving insertion order.
        """
        drop_v = set(remove_vertices)
        drop_e = set(remove_edges)
        for edge_id in drop_e:
            self.edge(edge_id)
        for name in drop_v:
            self.vertex(name)
        vertices = tuple(v for v in self.vertices if v.name not in drop_v) + tuple(add_vertices)
        edges = tuple(
            e for e in self.edges
            if e.id not in drop_e and e.tail not in drop_v and e.head not in drop_v
        ) + tuple(add_edges)
        return GainGraph(self.group, vertices, edges)

    def fresh_edge_id(self, prefix: str = "e") -> str:
        n = len(self.edges)
        while f"{prefix}{n}" in self._edge_index:
            n += 1
        return f"{prefix}{n}"

    def fresh_vertex_name(self, prefix: str = "v") -> str:
        n = len(self.vertices)
        while f"{prefix}{n}" in self._vertex_index:
            n += 1
        return f"{prefix}{n}"

    def canonical_hash(self) -> str:
        """!
        @brief Order-independent fingerprint of vertices, edge ids and gains.
        """
        lines = [f"group {self.k}"]
        lines += sorted(f"vertex {v.name} {v.kind.value}" for v in self.vertices)
        lines += sorted(f"edge {e.id} {e.tail} {e.head} {e.gain.value}" for e in self.edges)
        return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()[:16]


class GainGraphBuilder:
    """!
    @brief Incremental construction of a GainGraph with automatic edge ids.

    @details
    Edge ids default to ``e0, e1, ...`` in insertion order, which is also
    the id scheme of the text reader.
    """

    def __init__(self, group: CyclicGroup | int) -> None:
        self.group = group if isinstance(group, CyclicGroup) else CyclicGroup(group)
        self._vertices: list[Vertex] = []
        self._edges: list[GainEdge] = []

    def add_vertex(self, name: str, fixed: bool = False) -> GainGraphBuilder:
        kind = VertexKind.FIXED if fixed else VertexKind.FREE
        self._vertices.append(Vertex(name, kind))
        return self

    def add_edge(
        self, tail: str, head: str, gain: GainLike = 0, edge_id: Optional[str] = None
    ) -> GainGraphBuilder:
        value = int(gain) % self.group.k
        self._edges.append(
            GainEdge(edge_id or f"e{len(self._edges)}", tail, head, self.group(value))
        )
        return self

    def build(self) -> GainGraph:
        return GainGraph(self.group, tuple(self._vertices), tuple(self._edges))


class ViolationKind(Enum):
    """!
    @brief Clauses of the gain graph definition.
    """
    MULTIPLE_FIXED = "more than one fixed vertex"
    IDENTITY_LOOP = "identity loop"
    FIXED_LOOP = "fixed vertex loop"
    FIXED_PARALLEL = "fixed vertex parallel edges"
    PARALLEL_GAIN = "parallel gain clash"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    edges: tuple[str, ...] = ()
    vertex: Optional[str] = None

    def __str__(self) -> str:
        where = f" at {self.vertex}" if self.vertex else ""
        ids = f" ({', '.join(self.edges)})" if self.edges else ""
        return f"{self.kind.value}{where}{ids}"


def validate(g: GainGraph) -> list[Violation]:
    """!
    @brief Report every violated clause of the gain graph definition.

    @details
    Checks, in order: at most one fixed vertex; loops have non-identity gain
    and sit at free vertices; the fixed vertex has no parallel edges; any two
    parallel edges, oriented away from the same endpoint, carry distinct
    gains (which covers both the same-direction and opposite-direction
    clauses).

    @param g Graph to check
    @return List of violations, empty when the graph is valid
    """
    violations: list[Violation] = []
    fixed = g.fixed_vertices
    if len(fixed) > 1:
        violations.append(
            Violation(ViolationKind.MULTIPLE_FIXED, vertex=",".join(v.name for v in fixed))
        )
    fixed_names = {v.name for v in fixed}

    for e in g.edges:
        if e.is_loop and e.tail in fixed_names:
            violations.append(Violation(ViolationKind.FIXED_LOOP, (e.id,), e.tail))
        elif e.is_loop and e.gain.is_identity():
            violations.append(Violation(ViolationKind.IDENTITY_LOOP, (e.id,), e.tail))

    seen: dict[tuple[str, str, int], str] = {}
    for e in g.edges:
        a, b = sorted(e.endpoints())
        gains = {e.gain_from(a).value}
        if e.is_loop:
            gains.add((-e.gain).value)
        for value in sorted(gains):
            key = (a, b, value)
            if key in seen and seen[key] != e.id:
                violations.append(Violation(ViolationKind.PARALLEL_GAIN, (seen[key], e.id)))
            seen.setdefault(key, e.id)

    for name in fixed_names:
        ends = [e.other(name) for e in g.incident_edges(name) if not e.is_loop]
        repeated = sorted({w for w in ends if ends.count(w) > 1})
        for w in repeated:
            ids = tuple(e.id for e in g.incident_edges(name) if e.other(name) == w)
            violations.append(Violation(ViolationKind.FIXED_PARALLEL, ids, name))
    return violations


def is_valid(g: GainGraph) -> bool:
    return not validate(g)


@dataclass(frozen=True)
class Walk:
    """!
    @brief A walk given by its start vertex and signed edge traversals.

    @param start Starting vertex
    @param steps Pairs (edge id, sign) with sign +1 for traversal tail to head
    """
    start: str
    steps: tuple[tuple[str, int], ...] = ()

    def __add__(self, other: Walk) -> Walk:
        return Walk(self.start, self.steps + other.steps)


def walk_gain(g: GainGraph, w: Walk) -> GroupElement:
    """!
    @brief Signed sum of gains along a walk.

    @param g Gain graph
    @param w Walk in g
    @return psi(W)
    @throws WalkError If some step is not incident to the current vertex
    """
    g.vertex(w.start)
    current = w.start
    total = g.group.identity
    for edge_id, sign in w.steps:
        e = g.edge(edge_id)
        if sign == 1 and e.tail == current:
            current = e.head
            total = total + e.gain
        elif sign == -1 and e.head == current:
            current = e.tail
            total = total - e.gain
        else:
            raise WalkError(f"step along {edge_id} (sign {sign}) is not incident to {current}")
    return total


def switch(g: GainGraph, sigma: Mapping[str, GainLike]) -> GainGraph:
    """!
    @brief Apply the switching psi'(e) = sigma(tail) + psi(e) - sigma(head).

    @details
    Vertices missing from ``sigma`` switch by the identity. A non-identity
    value at the fixed vertex only relabels edges at the fixed vertex, whose
    labels are arbitrary.

    @param g Gain graph
    @param sigma Switching function on vertex names
    @return Equivalent gain graph
    """
    for name in sigma:
        g.vertex(name)
    shift = {name: int(value) % g.k for name, value in sigma.items()}
    edges = tuple(
        GainEdge(
            e.id, e.tail, e.head,
            g.group(shift.get(e.tail, 0) + e.gain.value - shift.get(e.head, 0)),
        )
        for e in g.edges
    )
    return GainGraph(g.group, g.vertices, edges)


@dataclass
class ForestPotential:
    """!
    @brief A switching that trivialises a spanning forest.

    @param sigma Potential per reached vertex
    @param root Root of the tree containing each reached vertex
    @param tree_edges Ids of the forest edges used
    """
    sigma: dict[str, int] = field(default_factory=dict)
    root: dict[str, str] = field(default_factory=dict)
    tree_edges: set[str] = field(default_factory=set)

    def switched_gain(self, e: GainEdge, k: int) -> int:
        return (self.sigma[e.tail] + e.gain.value - self.sigma[e.head]) % k


def forest_potential(g: GainGraph, exclude: Iterable[str] = ()) -> ForestPotential:
    """!
    @brief Switching that gives identity gain to a BFS spanning forest.

    @details
    Each component of g minus ``exclude`` is rooted at its first vertex in
    graph order; potentials propagate so every tree edge becomes the
    identity after switching.

    @param g Gain graph
    @param exclude Vertices left out of the forest (and their edges)
    @return The potential and the tree edges
    """
    skip = set(exclude)
    view = nx.MultiGraph()
    view.add_nodes_from(name for name in g.vertex_names if name not in skip)
    for e in g.edges:
        if e.tail not in skip and e.head not in skip and not e.is_loop:
            view.add_edge(e.tail, e.head, key=e.id, edge=e)

    potential = ForestPotential()
    for root in g.vertex_names:
        if root in skip or root in potential.sigma:
            continue
        potential.sigma[root] = 0
        potential.root[root] = root
        for parent, child in nx.bfs_edges(view, root):
            e = next(iter(view.get_edge_data(parent, child).values()))["edge"]
            potential.sigma[child] = (potential.sigma[parent] + e.gain_from(parent).value) % g.k
            potential.root[child] = root
            potential.tree_edges.add(e.id)
    return potential


def normalize_forest(g: GainGraph, t: Iterable[str]) -> GainGraph:
    """!
    @brief Switch so every edge of the forest t has identity gain.

    @details
    Each tree is rooted at the fixed vertex when it contains it, otherwise
    at its first vertex in graph order.

    @param g Gain graph
    @param t Edge ids forming a forest
    @return Equivalent gain graph with identity gains on t
    @throws GainGraphError If t contains a cycle (including a loop)
    """
    forest_ids = list(dict.fromkeys(t))
    if not forest_ids:
        return g
    forest = nx.MultiGraph()
    for edge_id in forest_ids:
        e = g.edge(edge_id)
        if e.is_loop:
            raise GainGraphError(f"forest contains the loop {edge_id}")
        forest.add_edge(e.tail, e.head, key=edge_id, edge=e)
    if not nx.is_forest(forest):
        raise GainGraphError("edge set contains a cycle")

    order = {name: i for i, name in enumerate(g.vertex_names)}
    sigma: dict[str, int] = {}
    for part in nx.connected_components(forest):
        fixed = [name for name in part if g.is_fixed(name)]
        root = fixed[0] if fixed else min(part, key=order.__getitem__)
        sigma[root] = 0
        for parent, child in nx.bfs_edges(forest, root):
            e = next(iter(forest.get_edge_data(parent, child).values()))["edge"]
            sigma[child] = (sigma[parent] + e.gain_from(parent).value) % g.k
    return switch(g, sigma)


def edge_subgraph(
    g: GainGraph, f: Iterable[str], retain: Iterable[str] = ()
) -> GainGraph:
    """!
    @brief Subgraph spanned by an edge set plus optionally retained vertices.

    @param g Gain graph
    @param f Edge ids
    @param retain Vertex names kept even when no chosen edge touches them
    @return The subgraph, vertices and edges in the order of g
    @throws GainGraphError On an unknown edge id or vertex name
    """
    chosen = set(f)
    for edge_id in chosen:
        g.edge(edge_id)
    keep = set(retain)
    for name in keep:
        g.vertex(name)
    edges = tuple(e for e in g.edges if e.id in chosen)
    for e in edges:
        keep.update(e.endpoints())
    return GainGraph(g.group, tuple(v for v in g.vertices if v.name in keep), edges)


@dataclass(frozen=True)
class DegreeProfile:
    """!
    @brief Counts of low-degree free vertices against the fixed vertex degree.

    @param degree_two Free vertices of degree 2 (s)
    @param degree_three Free vertices of degree 3 (t)
    @param fixed_degree Degree of the fixed vertex, 0 when absent
    """
    degree_two: int
    degree_three: int
    fixed_degree: int

    def covers_fixed_vertex(self) -> bool:
        """Whether 2s + t >= deg(v0), as holds for tight graphs with a fixed vertex."""
        return 2 * self.degree_two + self.degree_three >= self.fixed_degree


def degree_profile(g: GainGraph) -> DegreeProfile:
    degrees = [g.degree(v.name) for v in g.free_vertices]
    fixed = g.fixed_vertex
    return DegreeProfile(
        degrees.count(2),
        degrees.count(3),
        g.degree(fixed.name) if fixed is not None else 0,
    )

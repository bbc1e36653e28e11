"""!
@file numeric/lifting.py
@brief Covering graphs, symmetric configurations and frameworks.

@details
A gain edge (u, w, a) lifts to the k cover edges (u, t) -- (w, t + a).
Every orbit of the fixed vertex collapses to the single cover vertex
(v0, 0), so edges at the fixed vertex lift to k spokes whatever their
label. The cover is simple: coinciding lifts (a half-turn loop lifts to
only k/2 edges) are merged.

Configurations place one representative per free orbit and rotate it
into the other k - 1 positions, so the symmetry holds by construction.
Sampling uses counter-based Philox generators; independent trial seeds
come from spawning a SeedSequence.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import networkx as nx
import numpy as np

from symrigid.config import NumericConfig
from symrigid.core.cyclic import CyclicGroup, rotation
from symrigid.core.gain_graph import (
    GainEdge,
    GainGraph,
    GainGraphError,
    Vertex,
    VertexKind,
    validate,
)
from symrigid.counting.sparsity import CapacityError

logger = logging.getLogger(__name__)

## A cover vertex: (orbit name, index t); the fixed vertex is (name, 0).
CoverVertex = tuple[str, int]


class FrameworkError(ValueError):
    """!
    @brief Raised for degenerate geometry, such as a bar of length zero.
    """


class SamplingError(CapacityError):
    """!
    @brief Raised when rejection sampling exhausts its draw budget.
    """


@dataclass(frozen=True)
class CoverGraph:
    """!
    @brief The Z_k-symmetric graph covering a gain graph.

    @param k Group order
    @param vertices Cover vertices, orbit by orbit in graph order, t ascending
    @param edges Simple undirected edges in lifting order
    @param fixed Names of fixed orbits
    """
    k: int
    vertices: tuple[CoverVertex, ...]
    edges: tuple[tuple[CoverVertex, CoverVertex], ...]
    fixed: frozenset[str] = frozenset()

    @cached_property
    def index(self) -> dict[CoverVertex, int]:
        return {node: i for i, node in enumerate(self.vertices)}

    @cached_property
    def graph(self) -> nx.Graph:
        view = nx.Graph()
        view.add_nodes_from(self.vertices)
        view.add_edges_from(self.edges)
        return view

    def act(self, node: CoverVertex, shift: int = 1) -> CoverVertex:
        """Image of a cover vertex under the rotation by ``shift`` steps."""
        orbit, t = node
        if orbit in self.fixed:
            return node
        return (orbit, (t + shift) % self.k)


def _lift_node(g: GainGraph, name: str, t: int) -> CoverVertex:
    return (name, 0) if g.is_fixed(name) else (name, t % g.k)


def lift(g: GainGraph) -> CoverGraph:
    """!
    @brief Construct the covering graph of a valid gain graph.

    @param g Gain graph
    @return The simple Z_k-symmetric cover
    @throws GainGraphError If g violates the gain graph clauses
    """
    violations = validate(g)
    if violations:
        raise GainGraphError("cannot lift an invalid gain graph: " + str(violations[0]))
    vertices: list[CoverVertex] = []
    for v in g.vertices:
        if v.is_fixed:
            vertices.append((v.name, 0))
        else:
            vertices.extend((v.name, t) for t in range(g.k))

    seen: set[frozenset[CoverVertex]] = set()
    edges: list[tuple[CoverVertex, CoverVertex]] = []
    for e in g.edges:
        for t in range(g.k):
            a = _lift_node(g, e.tail, t)
            b = _lift_node(g, e.head, t + e.gain.value)
            key = frozenset((a, b))
            if a != b and key not in seen:
                seen.add(key)
                edges.append((a, b))
    fixed = frozenset(v.name for v in g.fixed_vertices)
    return CoverGraph(g.k, tuple(vertices), tuple(edges), fixed)


def quotient(cover: CoverGraph) -> GainGraph:
    """!
    @brief Recover a gain graph from a cover using representatives t = 0.

    @details
    Each edge orbit becomes one gain edge; edges at the fixed vertex get
    gain 0 and point towards it.
    """
    group = CyclicGroup(cover.k)
    orbits: list[str] = []
    for name, _ in cover.vertices:
        if name not in orbits:
            orbits.append(name)
    vertices = tuple(
        Vertex(name, VertexKind.FIXED if name in cover.fixed else VertexKind.FREE)
        for name in orbits
    )

    keys: list[tuple[str, str, int]] = []
    for (u, s), (w, t) in cover.edges:
        if u in cover.fixed:
            (u, s), (w, t) = (w, t), (u, s)
        if w in cover.fixed:
            key = (u, w, 0)
        else:
            forward = (u, w, (t - s) % cover.k)
            backward = (w, u, (s - t) % cover.k)
            if u == w:
                forward = (u, u, min(forward[2], backward[2]))
                backward = forward
            key = min(forward, backward, key=lambda item: (orbits.index(item[0]), item[2]))
        if key not in keys:
            keys.append(key)
    edges = tuple(
        GainEdge(f"e{i}", tail, head, group(gain)) for i, (tail, head, gain) in enumerate(keys)
    )
    return GainGraph(group, vertices, edges)


@dataclass(frozen=True)
class Framework:
    """!
    @brief A C_k-symmetric realisation of the cover of a gain graph.

    @param graph Gain graph realised
    @param cover Its cover
    @param representatives Position of (orbit, 0) for every free orbit
    """
    graph: GainGraph
    cover: CoverGraph
    representatives: Mapping[str, np.ndarray]

    @cached_property
    def positions(self) -> np.ndarray:
        """Cover positions, one row per cover vertex in cover order."""
        group = self.graph.group
        rows = []
        for name, t in self.cover.vertices:
            if name in self.cover.fixed:
                rows.append(np.zeros(2))
            else:
                rows.append(rotation(group(t)) @ self.representatives[name])
        return np.array(rows).reshape(len(rows), 2)

    def point(self, node: CoverVertex) -> np.ndarray:
        return self.positions[self.cover.index[node]]

    def representative(self, name: str) -> np.ndarray:
        """Position of (name, 0); the origin for the fixed vertex."""
        if self.graph.is_fixed(name):
            return np.zeros(2)
        return np.asarray(self.representatives[name], dtype=float)

    def symmetry_defect(self) -> float:
        """Largest deviation from p(t + 1) = tau(1) p(t) over the cover."""
        turn = rotation(self.graph.group(1))
        worst = 0.0
        for node in self.cover.vertices:
            image = self.point(self.cover.act(node))
            worst = max(worst, float(np.max(np.abs(image - turn @ self.point(node)))))
        return worst

    def min_separation(self) -> float:
        pts = self.positions
        if len(pts) < 2:
            return float("inf")
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.linalg.norm(diff, axis=-1)
        np.fill_diagonal(dist, np.inf)
        return float(dist.min())


def spawn_seeds(seed: int, trials: int) -> list[int]:
    """!
    @brief Independent per-trial seeds derived from one root seed.
    """
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(child.generate_state(1, np.uint64)[0]) for child in children]


def sample_configuration(
    g: GainGraph, seed: int, config: Optional[NumericConfig] = None
) -> Framework:
    """!
    @brief Sample a generic C_k-symmetric framework for g.

    @details
    Each free orbit representative is drawn uniformly from [-1, 1]^2,
    rejecting draws with norm below ``min_norm`` or whose orbit comes
    within ``min_separation`` of an already placed point (its own images
    included). The fixed vertex sits at the origin.

    @param g Valid gain graph
    @param seed Seed of the Philox generator
    @param config Numeric settings (defaults when omitted)
    @return The framework
    @throws SamplingError After ``max_draws`` rejected draws
    """
    config = config or NumericConfig()
    cover = lift(g)
    rng = np.random.Generator(np.random.Philox(seed))
    turns = np.array([rotation(g.group(t)) for t in range(g.k)])
    placed = np.zeros((1, 2)) if g.fixed_vertices else np.zeros((0, 2))
    representatives: dict[str, np.ndarray] = {}
    draws = 0

    for v in g.free_vertices:
        while True:
            if draws >= config.max_draws:
                raise SamplingError(
                    f"no admissible position for orbit {v.name} after {config.max_draws} draws"
                )
            draws += 1
            p = rng.uniform(-1.0, 1.0, size=2)
            if np.linalg.norm(p) < config.min_norm:
                continue
            images = turns @ p
            own = np.linalg.norm(images[1:] - images[0], axis=-1) if g.k > 1 else np.array([])
            if own.size and own.min() < config.min_separation:
                continue
            if placed.size:
                gaps = np.linalg.norm(images[:, None, :] - placed[None, :, :], axis=-1)
                if gaps.min() < config.min_separation:
                    continue
            break
        representatives[v.name] = p
        placed = np.vstack([placed, images])

    if draws > len(g.free_vertices):
        logger.debug(f"sampling seed {seed}: {draws - len(g.free_vertices)} draws rejected")
    return Framework(g, cover, representatives)


def format_framework(fw: Framework) -> str:
    """!
    @brief Export a framework as ``point`` and ``bond`` lines.

    @details
    Cover vertices are written as ``<orbit>:<t>``; coordinates use repr
    precision so the export is exact.
    """
    lines = [f"# cover of a Z_{fw.cover.k} gain graph: "
             f"{len(fw.cover.vertices)} vertices, {len(fw.cover.edges)} edges"]
    for node, (x, y) in zip(fw.cover.vertices, fw.positions):
        lines.append(f"point {node[0]} {node[1]} {float(x)!r} {float(y)!r}")
    for (a, s), (b, t) in fw.cover.edges:
        lines.append(f"bond {a}:{s} {b}:{t}")
    return "\n".join(lines) + "\n"

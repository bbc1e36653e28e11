"""!
@file henneberg/growth.py
@brief Random tight gain graphs grown from a base graph by admissible extensions.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from symrigid.config import NumericConfig
from symrigid.core.gain_graph import GainGraph, Vertex, VertexKind
from symrigid.counting.sparsity import check, first_violation_touching, tight_target
from symrigid.henneberg.moves import (
    ExtensionError,
    Move,
    apply_extension,
    ext0,
    ext1,
    extension_preserves_isostatic,
    loop1,
    two_vertex,
)
from symrigid.numeric.lifting import sample_configuration
from symrigid.numeric.rigidity import spec_for

logger = logging.getLogger(__name__)

## Attempts per step before growth gives up.
MAX_ATTEMPTS = 200


@dataclass(frozen=True)
class Growth:
    """!
    @brief A grown graph with the extensions applied, in order.
    """
    base: GainGraph
    graph: GainGraph
    moves: tuple[Move, ...]


def with_fixed_vertex(base: GainGraph, name: str = "v0") -> GainGraph:
    """Add an isolated fixed vertex to a graph that has none."""
    if base.fixed_vertices:
        return base
    return base.with_changes(add_vertices=[Vertex(name, VertexKind.FIXED)])


def _random_move(g: GainGraph, rng: np.random.Generator) -> Move:
    k = g.k
    names = list(g.vertex_names)
    kinds = ["ext0", "loop1"]
    if g.edges:
        kinds.append("ext1")
    if k % 2 == 0 and g.fixed_vertices:
        kinds.append("twovertex")
    kind = kinds[int(rng.integers(len(kinds)))]
    v = g.fresh_vertex_name("w")

    def pick() -> str:
        return names[int(rng.integers(len(names)))]

    def gain() -> int:
        return int(rng.integers(k))

    if kind == "ext0":
        return ext0(g, v, (pick(), gain()), (pick(), gain()))
    if kind == "loop1":
        return loop1(g, v, int(rng.integers(1, k)), pick(), gain())
    if kind == "ext1":
        edge = g.edges[int(rng.integers(len(g.edges)))]
        return ext1(g, v, edge.id, gain(), (pick(), gain()))
    taken = GainGraph(g.group, g.vertices + (Vertex(v),), g.edges)
    return two_vertex(g, v, taken.fresh_vertex_name("w"), None, (gain(), gain()), gain())


def grow(
    base: GainGraph,
    j: int,
    steps: int,
    rng: np.random.Generator,
    cap: Optional[int] = None,
    config: Optional[NumericConfig] = None,
) -> Growth:
    """!
    @brief Apply ``steps`` random admissible extensions to a base graph.

    @details
    A proposed move is kept when it is a valid extension, passes the
    isostatic guard on a freshly sampled configuration and leaves the
    graph tight for the rho_j count. The base is checked once; after that
    only edge sets meeting the new edges can break the count.

    @param base Tight starting graph
    @param j Representation index
    @param steps Number of extensions
    @param rng Seeded generator; equal seeds give equal graphs
    @param cap Subset enumeration cap
    @param config Numeric settings for the guard
    @return The grown graph and its moves
    @throws ExtensionError If the base is not tight or a step finds no admissible move
    """
    config = config or NumericConfig()
    spec = spec_for(base.k, j)
    if not check(base, spec, cap).tight:
        raise ExtensionError(f"growth needs a {spec}-tight base")
    current = base
    moves: list[Move] = []
    for step in range(steps):
        fw = sample_configuration(current, int(rng.integers(2**63)), config)
        for _ in range(MAX_ATTEMPTS):
            move = _random_move(current, rng)
            try:
                extended = apply_extension(current, move)
            except ExtensionError:
                continue
            if not extension_preserves_isostatic(current, move, j, fw, config):
                continue
            if len(extended.edges) != tight_target(extended, spec):
                continue
            new_ids = [e.id for e in move.edges]
            if first_violation_touching(extended, spec, new_ids, cap) is not None:
                continue
            logger.debug(f"growth step {step + 1}: {move}")
            current = extended
            moves.append(move)
            break
        else:
            raise ExtensionError(f"no admissible extension found in {MAX_ATTEMPTS} attempts")
    return Growth(base, current, tuple(moves))

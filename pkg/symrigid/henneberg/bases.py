"""!
@file henneberg/bases.py
@brief Recognition and labelling of the base graphs of the inductive family.

@details
A base graph is recognised by the shape of its underlying undirected
multigraph (fixed vertices matched to fixed vertices) together with
tightness for the count of the block. Two parametric 4-regular classes
cannot be listed shape by shape and are recognised by predicate instead:
removing one edge leaves an S(k, j) graph, or, for odd j, removing two
edges leaves a graph with gain group of order 2.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import itertools
import logging
from typing import Optional

import networkx as nx
from networkx.algorithms.isomorphism import categorical_node_match

from symrigid.core.classify import gain_group
from symrigid.core.cyclic import s_set
from symrigid.core.gain_graph import GainEdge, GainGraph, GainGraphError, edge_subgraph, validate
from symrigid.core.gallery import gallery
from symrigid.counting.sparsity import check
from symrigid.numeric.rigidity import spec_for

logger = logging.getLogger(__name__)

## Base shapes for 2 <= j <= k-2, tried in this order.
ZKJ_BASES: tuple[str, ...] = (
    "fixed-vertex",
    "loop-pair",
    "quad-edge",
    "delta-gadget",
    "looped-triangle",
    "five-vertex",
)

## Base shapes for j in {0, 1, k-1}.
COLUMN_BASES: tuple[str, ...] = ("fixed-vertex", "loop-vertex", "fixed-edge")

## Shapes whose non-loop edges stay at gain 0 while the loops are labelled.
_BALANCED_FRAME = frozenset({"looped-triangle", "five-vertex"})

S_PLUS_EDGE = "s-plus-edge"
Z2_PLUS_TWO_EDGES = "z2-plus-two-edges"

_match_kind = categorical_node_match("kind", "free")


def _same_shape(g: GainGraph, shape: GainGraph) -> bool:
    if len(g.vertices) != len(shape.vertices) or len(g.edges) != len(shape.edges):
        return False
    return nx.is_isomorphic(g.to_multigraph(), shape.to_multigraph(), node_match=_match_kind)


def _shape(name: str, k: int) -> Optional[GainGraph]:
    try:
        return gallery(f"base-{name}", k)
    except GainGraphError:
        return None


def _is_four_regular(g: GainGraph) -> bool:
    return bool(g.vertices) and not g.fixed_vertices and all(
        g.degree(v.name) == 4 for v in g.vertices
    )


def _without(g: GainGraph, ids: tuple[str, ...]) -> GainGraph:
    keep = [e.id for e in g.edges if e.id not in ids]
    return edge_subgraph(g, keep, retain=g.vertex_names)


def _four_regular_class(g: GainGraph, j: int) -> Optional[str]:
    k = g.k
    if not _is_four_regular(g):
        return None
    admissible = s_set(k, j, 0) | s_set(k, j, 1) | s_set(k, j, -1)
    for e in g.edges:
        if gain_group(_without(g, (e.id,))).order in admissible:
            return S_PLUS_EDGE
    if j % 2 == 1:
        for e, f in itertools.combinations(g.edges, 2):
            if gain_group(_without(g, (e.id, f.id))).order == 2:
                return Z2_PLUS_TWO_EDGES
    return None


def recognize_component(g: GainGraph, j: int) -> Optional[str]:
    """!
    @brief Name of the base graph a connected gain graph is, if any.

    @param g Connected gain graph (or an isolated vertex)
    @param j Representation index
    @return Base name, or None
    """
    k = g.k
    spec = spec_for(k, j)
    names = COLUMN_BASES if j in (0, 1, k - 1) else ZKJ_BASES
    for name in names:
        shape = _shape(name, k)
        if shape is not None and _same_shape(g, shape) and check(g, spec).tight:
            return name
    if j not in (0, 1, k - 1):
        kind = _four_regular_class(g, j)
        if kind is not None and check(g, spec).tight:
            return kind
    return None


def recognize_base(g: GainGraph, j: int) -> Optional[str]:
    """!
    @brief Recognise a graph whose every component is a base graph.

    @return Component base names joined with ``+`` in graph order, or None
    """
    names = []
    for vertices, edge_ids in g.components():
        component = edge_subgraph(g, edge_ids, retain=vertices)
        name = recognize_component(component, j)
        if name is None:
            return None
        names.append(name)
    return "+".join(names) if names else None


def labelled_base(name: str, k: int, j: int) -> GainGraph:
    """!
    @brief First tight gain labelling of a base shape.

    @details
    Labellings are searched in lexicographic order of the edge gains. The
    first non-loop edge stays at gain 0, which loses nothing up to
    switching; the balanced gadgets keep every non-loop edge at 0. Loops
    range over the non-identity gains.

    @param name Base shape name from ZKJ_BASES or COLUMN_BASES
    @param k Group order
    @param j Representation index
    @return The labelled base graph
    @throws GainGraphError If the shape is unknown or has no tight labelling
    """
    shape = _shape(name, k)
    if shape is None:
        raise GainGraphError(f"no base shape {name} for k={k}")
    spec = spec_for(k, j)
    if not shape.edges:
        return shape

    first_link = next((e.id for e in shape.edges if not e.is_loop), None)
    choices: list[range] = []
    for e in shape.edges:
        if e.is_loop:
            choices.append(range(1, k))
        elif e.id == first_link or name in _BALANCED_FRAME:
            choices.append(range(0, 1))
        else:
            choices.append(range(k))

    for gains in itertools.product(*choices):
        edges = tuple(
            GainEdge(e.id, e.tail, e.head, shape.group(value))
            for e, value in zip(shape.edges, gains)
        )
        candidate = GainGraph(shape.group, shape.vertices, edges)
        if validate(candidate):
            continue
        if check(candidate, spec).tight:
            logger.debug(f"base {name} at k={k}, j={j}: gains {gains}")
            return candidate
    raise GainGraphError(f"base {name} has no tight labelling for k={k}, j={j}")

"""!
@file core/classify.py
@brief Gain groups, balance, near-balance and the alpha classifier.

@details
All predicates look only at closed walks avoiding the fixed vertex. The
gain group is read off a BFS spanning forest of h - v0: after switching
the forest to identity, the remaining edges' gains generate it.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from symrigid.core.cyclic import (
    GroupElement,
    GroupMismatchError,
    RepresentationError,
    SubgroupDescriptor,
    s_class,
    subgroup_generated,
)
from symrigid.core.gain_graph import GainGraph, forest_potential


class SubgraphKind(Enum):
    """!
    @brief Rungs of the alpha ladder, in evaluation order.
    """
    BALANCED = "balanced"
    Z2 = "z2"
    S_PM1 = "s_pm1"
    S0 = "s0"
    PROPER_NEAR_BALANCED = "proper-near-balanced"
    GENERAL = "general"


@dataclass(frozen=True)
class NearBalanceWitness:
    """!
    @brief A base vertex v and gain delta: closed walks through v only
           (as an endpoint) have gain 0, delta or -delta.
    """
    base: str
    delta: GroupElement


@dataclass(frozen=True)
class SubgraphClass:
    kind: SubgraphKind
    group_order: int
    fixed_count: int
    near_balance_witness: Optional[NearBalanceWitness] = None


def gain_group(h: GainGraph) -> SubgroupDescriptor:
    """!
    @brief Subgroup generated by the gains of closed walks avoiding v0.

    @details
    Disconnected input is allowed; generators are pooled across the
    components of h - v0.

    @param h Gain graph
    @return Descriptor of the gain group
    """
    fixed = [v.name for v in h.fixed_vertices]
    potential = forest_potential(h, exclude=fixed)
    skip = set(fixed)
    gens = [
        potential.switched_gain(e, h.k)
        for e in h.edges
        if e.tail not in skip and e.head not in skip and e.id not in potential.tree_edges
    ]
    return subgroup_generated(h.group, gens)


def is_balanced(h: GainGraph) -> bool:
    return gain_group(h).is_trivial


def _near_balance_at(h: GainGraph, base: str) -> Optional[GroupElement]:
    potential = forest_potential(h, exclude=[base])
    k = h.k
    for e in h.edges:
        if base not in e.endpoints() and potential.switched_gain(e, k) != 0:
            return None

    differences: list[int] = []
    offsets: dict[str, list[int]] = {}
    for e in h.incident_edges(base):
        if e.is_loop:
            differences += [e.gain.value, (-e.gain).value]
            continue
        other = e.other(base)
        value = (e.gain_from(base).value - potential.sigma[other]) % k
        offsets.setdefault(potential.root[other], []).append(value)
    for values in offsets.values():
        differences += [(a - b) % k for a in values for b in values]

    delta: Optional[int] = None
    for d in differences:
        if d == 0:
            continue
        if delta is None:
            delta = d
        elif d not in (delta, (-delta) % k):
            return None
    return None if delta is None else h.group(delta)


def near_balance(h: GainGraph) -> Optional[NearBalanceWitness]:
    """!
    @brief Find a base vertex at which h is near-balanced.

    @details
    At a candidate base v, h - v must be balanced. Switching h - v to
    identity, each closed walk through v is an out-edge, a path inside one
    component of h - v and a return edge (or a single loop), so its gain is
    a difference of two edge offsets from the same component. All such
    nonzero gains must agree up to sign. Vertices are tried in
    lexicographic order.

    @param h Gain graph without a fixed vertex
    @return First witness found, or None (also for balanced input or when a
            fixed vertex is present)
    """
    if h.fixed_vertices or is_balanced(h):
        return None
    for base in sorted(h.vertex_names):
        delta = _near_balance_at(h, base)
        if delta is not None:
            return NearBalanceWitness(base, delta)
    return None


def is_proper_near_balanced(h: GainGraph) -> bool:
    if h.fixed_vertices:
        return False
    if gain_group(h).order in (1, 2, 3):
        return False
    return near_balance(h) is not None


def classify_alpha(h: GainGraph, k: int, j: int) -> tuple[SubgraphClass, int]:
    """!
    @brief Classify a connected gain graph and evaluate alpha for rho_j.

    @details
    The first matching rung wins:
    balanced 0, Z_2 with j odd 1, S_{+1}/S_{-1} 2 - |V_0|,
    S_0 2 - 2|V_0|, proper near-balanced without v0 2, otherwise 3 - 2|V_0|.

    @param h Connected gain graph (an isolated v0 may be present)
    @param k Group order, must match h
    @param j Representation index with 2 <= j <= k-2
    @return The class and alpha
    @throws RepresentationError If j is out of range
    @throws GroupMismatchError If k differs from the graph's group
    """
    if h.k != k:
        raise GroupMismatchError(f"graph over Z_{h.k} classified for k={k}")
    if not 2 <= j <= k - 2:
        raise RepresentationError(f"alpha needs 2 <= j <= k-2, got j={j}, k={k}")

    nfix = len(h.fixed_vertices)
    order = gain_group(h).order

    if order == 1:
        return SubgraphClass(SubgraphKind.BALANCED, order, nfix), 0
    if j % 2 == 1 and order == 2:
        return SubgraphClass(SubgraphKind.Z2, order, nfix), 1
    s_index = s_class(k, j, order)
    if s_index in (1, -1):
        return SubgraphClass(SubgraphKind.S_PM1, order, nfix), 2 - nfix
    if s_index == 0:
        return SubgraphClass(SubgraphKind.S0, order, nfix), 2 - 2 * nfix
    if nfix == 0 and order not in (2, 3):
        witness = near_balance(h)
        if witness is not None:
            return SubgraphClass(SubgraphKind.PROPER_NEAR_BALANCED, order, 0, witness), 2
    return SubgraphClass(SubgraphKind.GENERAL, order, nfix), 3 - 2 * nfix

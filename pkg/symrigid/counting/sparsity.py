"""!
@file counting/sparsity.py
@brief Sparsity counts, the independence oracle and greedy matroid search.

@details
Three families of counts are supported:

- ``plain:m,l``  |E(H)| <= 2|V̄(H)| + m|V_0(H)| - l
- ``gain:m,l``   the plain count, plus |E(H)| <= 2|V(H)| - 3 on balanced H
- ``zkj:j``      |E(H)| <= f(H), the sum over components X of
                 2|V(X)| - 3 + alpha(X)

Every bound is subadditive over connected components, so a violating edge
set always has a violating component. The checks therefore enumerate
connected edge subsets only, with bitmasks over the graph's edge order.
Violations are compared by (size, mask), so the reported witness is the
smallest violating set and, among those, the first in edge order.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from symrigid.core.classify import classify_alpha, is_balanced
from symrigid.core.cyclic import RepresentationError
from symrigid.core.gain_graph import GainGraph, GainGraphError, edge_subgraph

logger = logging.getLogger(__name__)


class CapacityError(RuntimeError):
    """!
    @brief Raised when an exhaustive enumeration would exceed its cap.
    """


class CountFamily(Enum):
    PLAIN = "plain"
    GAIN = "gain"
    ZKJ = "zkj"


@dataclass(frozen=True)
class CountSpec:
    """!
    @brief A count to check a gain graph against.

    @param family Count family
    @param m Coefficient of the fixed vertex: 0..2 for plain, 0..1 for gain
    @param l Subtracted constant: 0..3 for plain, 1..2 for gain
    @param j Representation index (zkj); may be left open and bound later
    """
    family: CountFamily
    m: int = 0
    l: int = 0  # noqa: E741
    j: Optional[int] = None

    def __post_init__(self) -> None:
        if self.family is CountFamily.ZKJ:
            return
        m_max, l_min, l_max = (1, 1, 2) if self.family is CountFamily.GAIN else (2, 0, 3)
        if not 0 <= self.m <= m_max:
            raise ValueError(f"count coefficient m must lie in [0, {m_max}], got {self.m}")
        if not l_min <= self.l <= l_max:
            raise ValueError(
                f"count constant l must lie in [{l_min}, {l_max}], got {self.l}"
            )

    @classmethod
    def plain(cls, m: int, l: int) -> CountSpec:  # noqa: E741
        return cls(CountFamily.PLAIN, m, l)

    @classmethod
    def gain(cls, m: int, l: int) -> CountSpec:  # noqa: E741
        return cls(CountFamily.GAIN, m, l)

    @classmethod
    def zkj(cls, j: Optional[int] = None) -> CountSpec:
        return cls(CountFamily.ZKJ, j=j)

    @classmethod
    def parse(cls, text: str) -> CountSpec:
        """!
        @brief Parse ``plain:m,l``, ``gain:m,l``, ``zkj`` or ``zkj:j``.

        @throws ValueError On any other form
        """
        name, _, params = text.strip().partition(":")
        try:
            family = CountFamily(name)
        except ValueError:
            raise ValueError(f"unknown count family {name!r} in {text!r}") from None
        try:
            if family is CountFamily.ZKJ:
                return cls.zkj(int(params) if params else None)
            m, l = (int(p) for p in params.split(","))  # noqa: E741
        except ValueError:
            raise ValueError(f"malformed count specification {text!r}") from None
        return cls(family, m, l)

    def with_j(self, j: int) -> CountSpec:
        if self.family is not CountFamily.ZKJ:
            return self
        return CountSpec(CountFamily.ZKJ, j=j)

    def __str__(self) -> str:
        if self.family is CountFamily.ZKJ:
            return "zkj" if self.j is None else f"zkj:{self.j}"
        return f"{self.family.value}:{self.m},{self.l}"


@dataclass(frozen=True)
class Witness:
    """!
    @brief A violating edge set with its size and the bound it exceeds.
    """
    edges: tuple[str, ...]
    count: int
    bound: int


@dataclass(frozen=True)
class SparsityVerdict:
    spec: CountSpec
    sparse: bool
    tight: bool
    edge_count: int
    target: int
    witness: Optional[Witness] = None

    def describe(self) -> str:
        if self.tight:
            return "tight"
        if self.sparse:
            return "sparse, not tight"
        return "not sparse"


def _default_cap() -> int:
    from symrigid.config import Config

    return Config.from_env().counting.subset_cap


def in_matroidal_regime(k: int) -> bool:
    """True for the group orders where the zkj count is known to be matroidal."""
    return k in (4, 6) or (k % 2 == 1 and 5 <= k <= 1000)


def _require_j(g: GainGraph, spec: CountSpec) -> int:
    if spec.j is None:
        raise RepresentationError(f"count {spec} needs a representation index j")
    if not 2 <= spec.j <= g.k - 2:
        raise RepresentationError(f"zkj count needs 2 <= j <= k-2, got j={spec.j}, k={g.k}")
    return spec.j


def f_value(g: GainGraph, f: Iterable[str], k: int, j: int) -> int:
    """!
    @brief The submodular function f(F) = sum over components X of 2|V(X)| - 3 + alpha(X).

    @param g Gain graph
    @param f Nonempty set of edge ids
    @param k Group order
    @param j Representation index, 2 <= j <= k-2
    @return f(F)
    @throws GainGraphError If f is empty or names an unknown edge
    """
    ids = list(f)
    if not ids:
        raise GainGraphError("f_value needs a nonempty edge set")
    sub = edge_subgraph(g, ids)
    total = 0
    for names, edge_ids in sub.components():
        part = edge_subgraph(sub, edge_ids)
        _, alpha = classify_alpha(part, k, j)
        total += 2 * len(names) - 3 + alpha
    return total


def tight_target(g: GainGraph, spec: CountSpec) -> int:
    """!
    @brief Edge count a tight graph must have.

    @details
    2|V̄| + m|V_0| - l for the plain and gain counts, 2|V̄| for zkj, and 0
    for a graph without free vertices.
    """
    free = len(g.free_vertices)
    if free == 0:
        return 0
    if spec.family is CountFamily.ZKJ:
        return 2 * free
    return 2 * free + spec.m * len(g.fixed_vertices) - spec.l


class _SubsetCounter:
    """!
    @brief Bitmask view of a graph's edges with a cached bound per subset.
    """

    def __init__(self, g: GainGraph, spec: CountSpec) -> None:
        self.g = g
        self.spec = spec
        self.j = _require_j(g, spec) if spec.family is CountFamily.ZKJ else None
        self.ids = g.edge_ids
        self.index = {edge_id: i for i, edge_id in enumerate(self.ids)}
        fixed = {v.name for v in g.fixed_vertices}
        self.ends: list[frozenset[str]] = [frozenset(e.endpoints()) for e in g.edges]
        self.fixed_ends = [len(ends & fixed) for ends in self.ends]
        self.adj: list[int] = []
        for i, ends in enumerate(self.ends):
            mask = 0
            for other, other_ends in enumerate(self.ends):
                if other != i and ends & other_ends:
                    mask |= 1 << other
            self.adj.append(mask)
        self._cache: dict[int, int] = {}

    def mask_of(self, ids: Iterable[str]) -> int:
        mask = 0
        for edge_id in ids:
            try:
                mask |= 1 << self.index[edge_id]
            except KeyError:
                raise GainGraphError(f"unknown edge: {edge_id}") from None
        return mask

    def ids_of(self, mask: int) -> tuple[str, ...]:
        return tuple(edge_id for i, edge_id in enumerate(self.ids) if mask >> i & 1)

    def vertex_counts(self, mask: int) -> tuple[int, int]:
        names: set[str] = set()
        for i, ends in enumerate(self.ends):
            if mask >> i & 1:
                names |= ends
        fixed = sum(1 for name in names if self.g.is_fixed(name))
        return len(names) - fixed, fixed

    def bound(self, mask: int) -> int:
        """Bound on |F| for a connected edge set F given as a mask."""
        cached = self._cache.get(mask)
        if cached is not None:
            return cached
        free, fixed = self.vertex_counts(mask)
        spec = self.spec
        if spec.family is CountFamily.ZKJ:
            _, alpha = classify_alpha(edge_subgraph(self.g, self.ids_of(mask)), self.g.k, self.j)
            value = 2 * (free + fixed) - 3 + alpha
        else:
            value = 2 * free + spec.m * fixed - spec.l
            if spec.family is CountFamily.GAIN and is_balanced(
                edge_subgraph(self.g, self.ids_of(mask))
            ):
                value = min(value, 2 * (free + fixed) - 3)
        self._cache[mask] = value
        return value

    def _grow(self, subset: int, frontier: int, excluded: int, allowed: int) -> Iterator[int]:
        yield subset
        candidates = frontier & ~excluded
        while candidates:
            bit = candidates & -candidates
            candidates ^= bit
            excluded |= bit
            grown = subset | bit
            reach = (frontier | self.adj[bit.bit_length() - 1]) & allowed & ~grown
            yield from self._grow(grown, reach, excluded, allowed)

    def connected_subsets(self, universe: int) -> Iterator[int]:
        """Every nonempty connected subset of ``universe``, each exactly once."""
        for r in range(len(self.ids)):
            bit = 1 << r
            if not universe & bit:
                continue
            below = (bit << 1) - 1
            allowed = universe & ~below
            yield from self._grow(bit, self.adj[r] & allowed, below, allowed)

    def connected_subsets_with(self, universe: int, edge: int) -> Iterator[int]:
        """Every connected subset of ``universe`` that contains edge number ``edge``."""
        bit = 1 << edge
        allowed = universe & ~bit
        yield from self._grow(bit, self.adj[edge] & allowed, bit, allowed)

    def first_violation(self, subsets: Iterable[int]) -> Optional[Witness]:
        best: Optional[tuple[int, int, int]] = None
        for mask in subsets:
            size = bin(mask).count("1")
            if best is not None and (size, mask) >= best[:2]:
                continue
            limit = self.bound(mask)
            if size > limit:
                best = (size, mask, limit)
        if best is None:
            return None
        size, mask, limit = best
        return Witness(self.ids_of(mask), size, limit)


def _check_cap(size: int, cap: Optional[int]) -> None:
    limit = _default_cap() if cap is None else cap
    if size > limit:
        raise CapacityError(
            f"{size} edges exceed the subset enumeration cap of {limit} (set SYMRIGID_CAP)"
        )


def check(g: GainGraph, spec: CountSpec, cap: Optional[int] = None) -> SparsityVerdict:
    """!
    @brief Decide whether a graph is sparse and tight for a count.

    @param g Valid gain graph
    @param spec Count specification (zkj needs j bound)
    @param cap Subset enumeration cap; SYMRIGID_CAP or 22 when omitted
    @return Verdict with the first violating edge set when not sparse
    @throws CapacityError If the graph has more edges than the cap
    """
    _check_cap(len(g.edges), cap)
    counter = _SubsetCounter(g, spec)
    everything = (1 << len(g.edges)) - 1
    witness = counter.first_violation(counter.connected_subsets(everything))
    target = tight_target(g, spec)
    sparse = witness is None
    verdict = SparsityVerdict(
        spec, sparse, sparse and len(g.edges) == target, len(g.edges), target, witness
    )
    logger.debug(f"check {spec}: {verdict.describe()} ({len(g.edges)} edges, target {target})")
    return verdict


def first_violation_with(
    g: GainGraph, spec: CountSpec, edge_id: str, cap: Optional[int] = None
) -> Optional[Witness]:
    """!
    @brief Smallest violating connected edge set that contains a given edge.

    @details
    When g minus the edge is sparse, g is sparse exactly when this returns
    None; the reduction search uses the witness as a blocker.
    """
    return first_violation_touching(g, spec, [edge_id], cap)


def first_violation_touching(
    g: GainGraph, spec: CountSpec, edge_ids: Iterable[str], cap: Optional[int] = None
) -> Optional[Witness]:
    """!
    @brief Smallest violating connected edge set meeting any of ``edge_ids``.

    @details
    When g minus these edges is sparse, g is sparse exactly when this
    returns None. Each connected set is enumerated once, from the first
    listed edge (in graph order) that it contains.

    @throws GainGraphError If an edge id is unknown
    """
    _check_cap(len(g.edges), cap)
    counter = _SubsetCounter(g, spec)
    touched = counter.mask_of(edge_ids)

    def subsets() -> Iterator[int]:
        universe = (1 << len(g.edges)) - 1
        for edge in range(len(g.edges)):
            if touched >> edge & 1:
                yield from counter.connected_subsets_with(universe, edge)
                universe &= ~(1 << edge)

    return counter.first_violation(subsets())


def independent(
    g: GainGraph, f: Iterable[str], spec: CountSpec, cap: Optional[int] = None
) -> bool:
    """!
    @brief Whether every nonempty subset of f satisfies the count.

    @param g Gain graph
    @param f Edge ids
    @param spec Count specification
    @param cap Subset enumeration cap
    @return True for the empty set
    """
    ids = list(dict.fromkeys(f))
    if not ids:
        return True
    _check_cap(len(ids), cap)
    counter = _SubsetCounter(g, spec)
    universe = counter.mask_of(ids)
    return counter.first_violation(counter.connected_subsets(universe)) is None


def maximal_independent(
    g: GainGraph,
    spec: CountSpec,
    order: Optional[Sequence[str]] = None,
    cap: Optional[int] = None,
) -> list[str]:
    """!
    @brief Greedy maximal independent edge set.

    @details
    Each edge is accepted when every connected subset of the current set
    plus that edge, containing the edge, satisfies the count. In a
    matroid all greedy orders give the same cardinality.

    @param g Gain graph
    @param spec Count specification
    @param order Edge scan order; the graph's edge order when omitted
    @param cap Cap on the size of the set being grown
    @return Accepted edge ids in scan order
    """
    counter = _SubsetCounter(g, spec)
    scan = list(order) if order is not None else list(g.edge_ids)
    accepted = 0
    chosen: list[str] = []
    for edge_id in scan:
        _check_cap(len(chosen) + 1, cap)
        edge = counter.mask_of([edge_id])
        index = edge.bit_length() - 1
        if counter.first_violation(counter.connected_subsets_with(accepted | edge, index)) is None:
            accepted |= edge
            chosen.append(edge_id)
            logger.debug(f"greedy {spec}: accepted {edge_id}")
    return chosen


def greedy_tight_spanning(
    g: GainGraph, spec: CountSpec, cap: Optional[int] = None
) -> Optional[list[str]]:
    """!
    @brief A tight spanning subgraph found greedily, if one exists.

    @details
    Greedy search is only conclusive where the count is matroidal; a
    warning is logged for zkj counts outside that regime.

    @return Edge ids of the tight spanning subgraph, or None
    """
    if spec.family is CountFamily.ZKJ and not in_matroidal_regime(g.k):
        logger.warning(f"greedy search for {spec} at k={g.k} is outside the matroidal regime")
    chosen = maximal_independent(g, spec, cap=cap)
    if len(chosen) == tight_target(g, spec):
        return chosen
    return None

"""!
@file numeric/rigidity.py
@brief Rigidity matrices, rho_j-symmetric motion spaces and orbit ranks.

@details
The rigidity matrix of the cover is block-diagonalised by the characters
rho_0, ..., rho_{k-1} of Z_k. The rho_j block is computed twice:

- restricted: the cover's rigidity matrix applied to a basis of the
  rho_j-symmetric motions, m(t) = conj(rho_j(t)) C^t m(0);
- direct: one complex row per gain edge (the orbit matrix).

Both ranks use singular values above a threshold relative to the largest
one; disagreement raises RankMismatchError. The generic rank of a block
is the maximum over several sampled configurations.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np

from symrigid.config import NumericConfig
from symrigid.core.cyclic import CyclicGroup, RepresentationError, rep_value, rotation
from symrigid.core.gain_graph import GainGraph
from symrigid.counting.sparsity import (
    CountSpec,
    greedy_tight_spanning,
    in_matroidal_regime,
)
from symrigid.numeric.lifting import (
    Framework,
    FrameworkError,
    sample_configuration,
    spawn_seeds,
)

logger = logging.getLogger(__name__)


class RankMismatchError(RuntimeError):
    """!
    @brief Raised when the restricted and direct orbit ranks disagree.
    """


def bar_matrix(positions: np.ndarray, bars: Sequence[tuple[int, int]]) -> np.ndarray:
    """!
    @brief Rigidity matrix of a bar-joint framework.

    @details
    The row of bar {u, v} holds (p(u) - p(v)) in u's columns and
    (p(v) - p(u)) in v's columns.

    @param positions Array of shape (n, 2)
    @param bars Pairs of vertex indices
    @return Real matrix of shape (len(bars), 2n)
    @throws FrameworkError If a bar has coincident endpoints
    """
    positions = np.asarray(positions, dtype=float)
    matrix = np.zeros((len(bars), 2 * len(positions)))
    for row, (u, v) in enumerate(bars):
        d = positions[u] - positions[v]
        if np.linalg.norm(d) < 1e-12:
            raise FrameworkError(f"bar {row} joins coincident points {u} and {v}")
        matrix[row, 2 * u:2 * u + 2] = d
        matrix[row, 2 * v:2 * v + 2] = -d
    return matrix


def rigidity_matrix(fw: Framework) -> np.ndarray:
    """Rigidity matrix of the cover, rows in cover edge order."""
    index = fw.cover.index
    bars = [(index[a], index[b]) for a, b in fw.cover.edges]
    return bar_matrix(fw.positions, bars)


def numeric_rank(matrix: np.ndarray, tolerance: float = 1e-8) -> int:
    """!
    @brief Number of singular values above ``tolerance`` times the largest.
    """
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tolerance * s[0]))


def _check_j(k: int, j: int) -> None:
    if not 0 <= j < k:
        raise RepresentationError(f"representation index j={j} out of range for k={k}")


def trivial_dimension(k: int, j: int) -> int:
    """!
    @brief Dimension of the trivial rho_j-symmetric motions of a generic framework.

    @details
    One for j in {0, 1, k-1} (the rotation, and one complex combination of
    the translations each), zero otherwise.

    @throws RepresentationError If k < 3 or j is out of range
    """
    if k < 3:
        raise RepresentationError(f"trivial dimensions need k >= 3, got k={k}")
    _check_j(k, j)
    return 1 if j in (0, 1, k - 1) else 0


def fixed_space(k: int, j: int, tolerance: float = 1e-9) -> np.ndarray:
    """!
    @brief Orthonormal basis of the rho_j motions of the fixed vertex.

    @details
    The null space of conj(rho_j(1)) C - I on C^2, where C is the rotation
    by 2 pi / k. It is one-dimensional exactly when j = +-1 mod k.

    @return Complex array of shape (2, d0)
    """
    _check_j(k, j)
    group = CyclicGroup(k)
    operator = np.conj(rep_value(j, group(1))) * rotation(group(1)) - np.eye(2)
    _, s, vh = np.linalg.svd(operator)
    null = [vh[i].conj() for i in range(2) if s[i] < tolerance]
    if not null:
        return np.zeros((2, 0), dtype=complex)
    return np.array(null).T


@dataclass
class SymmetricMotionBasis:
    """!
    @brief Basis of the rho_j-symmetric motions of a framework.

    @param j Representation index
    @param matrix Complex array of shape (2N, D), one column per parameter
    @param labels (orbit, coordinate) of every column
    """
    j: int
    matrix: np.ndarray
    labels: list[tuple[str, int]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[1]


def symmetric_motion_space(fw: Framework, j: int) -> SymmetricMotionBasis:
    """!
    @brief Expand orbit parameters into cover motions by equivariance.

    @details
    A free orbit contributes two columns, with the block at (orbit, t)
    equal to conj(rho_j(t)) C^t e_c / sqrt(k). The fixed vertex contributes
    the columns of fixed_space(k, j).
    """
    g = fw.graph
    k = g.k
    _check_j(k, j)
    index = fw.cover.index
    f = fixed_space(k, j)
    scale = 1.0 / np.sqrt(k)
    columns: list[np.ndarray] = []
    labels: list[tuple[str, int]] = []
    size = 2 * len(fw.cover.vertices)

    for v in g.vertices:
        if v.is_fixed:
            row = 2 * index[(v.name, 0)]
            for c in range(f.shape[1]):
                column = np.zeros(size, dtype=complex)
                column[row:row + 2] = f[:, c]
                columns.append(column)
                labels.append((v.name, c))
            continue
        for c in range(2):
            column = np.zeros(size, dtype=complex)
            for t in range(k):
                block = np.conj(rep_value(j, g.group(t))) * rotation(g.group(t))[:, c]
                row = 2 * index[(v.name, t)]
                column[row:row + 2] = scale * block
            columns.append(column)
            labels.append((v.name, c))

    matrix = np.array(columns).T if columns else np.zeros((size, 0), dtype=complex)
    return SymmetricMotionBasis(j, matrix, labels)


def orbit_matrix(g: GainGraph, fw: Framework, j: int) -> np.ndarray:
    """!
    @brief The rho_j orbit matrix, one complex row per gain edge.

    @details
    For the edge (u, w, a) the row holds (p(u) - tau(a) p(w)) M_u in u's
    block and conj(rho_j(a)) (p(w) - tau(a)^-1 p(u)) M_w in w's block,
    where M is the identity for a free vertex and fixed_space(k, j) for
    the fixed one. A loop adds both terms to one block.
    """
    k = g.k
    _check_j(k, j)
    f = fixed_space(k, j)
    offsets: dict[str, int] = {}
    width = 0
    for v in g.vertices:
        offsets[v.name] = width
        width += f.shape[1] if v.is_fixed else 2

    def block(name: str) -> np.ndarray:
        return f if g.is_fixed(name) else np.eye(2)

    matrix = np.zeros((len(g.edges), width), dtype=complex)
    for row, e in enumerate(g.edges):
        turn = rotation(e.gain)
        pu = fw.representative(e.tail)
        pw = fw.representative(e.head)
        tail_part = (pu - turn @ pw) @ block(e.tail)
        head_part = np.conj(rep_value(j, e.gain)) * (pw - turn.T @ pu) @ block(e.head)
        start = offsets[e.tail]
        matrix[row, start:start + tail_part.shape[0]] += tail_part
        start = offsets[e.head]
        matrix[row, start:start + head_part.shape[0]] += head_part
    return matrix


@dataclass(frozen=True)
class OrbitRank:
    rank: int
    nullity: int
    dimension: int
    rows: int


def orbit_rank(
    g: GainGraph,
    fw: Framework,
    j: int,
    tolerance: float = 1e-8,
    cross_check: bool = True,
) -> OrbitRank:
    """!
    @brief Rank and nullity of the rho_j block at one configuration.

    @param g Gain graph realised by fw
    @param fw Symmetric framework
    @param j Representation index
    @param tolerance Relative singular value threshold
    @param cross_check Also build the direct orbit matrix and compare ranks
    @return Rank, nullity, dimension of the symmetric space and row count
    @throws RankMismatchError If the two computations disagree
    """
    basis = symmetric_motion_space(fw, j)
    restricted = rigidity_matrix(fw) @ basis.matrix
    rank = numeric_rank(restricted, tolerance)
    if cross_check:
        direct = numeric_rank(orbit_matrix(g, fw, j), tolerance)
        if direct != rank:
            logger.warning(f"rho_{j} rank mismatch: restricted {rank}, orbit matrix {direct}")
            raise RankMismatchError(
                f"rho_{j} block: restricted rank {rank} differs from orbit matrix rank {direct}"
            )
    return OrbitRank(rank, basis.dimension - rank, basis.dimension, len(g.edges))


def trivial_motions(fw: Framework) -> np.ndarray:
    """!
    @brief The rotation field (-y, x) and the two translations, as columns.
    """
    pts = fw.positions
    n = len(pts)
    motions = np.zeros((2 * n, 3))
    motions[0::2, 0] = -pts[:, 1]
    motions[1::2, 0] = pts[:, 0]
    motions[0::2, 1] = 1.0
    motions[1::2, 2] = 1.0
    return motions


def _orthonormal(matrix: np.ndarray, tolerance: float) -> np.ndarray:
    if matrix.size == 0:
        return np.zeros((matrix.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((matrix.shape[0], 0), dtype=complex)
    return u[:, s > tolerance * max(s[0], 1.0)]


def _trivial_block(fw: Framework, basis: SymmetricMotionBasis, tolerance: float) -> np.ndarray:
    q = _orthonormal(basis.matrix, tolerance)
    projected = q @ (q.conj().T @ trivial_motions(fw))
    return _orthonormal(projected, tolerance)


def framework_trivial_dimension(fw: Framework, j: int, tolerance: float = 1e-8) -> int:
    """!
    @brief Dimension of the trivial motions lying in the rho_j block.

    @details
    Projects the rotation field and both translations onto the rho_j
    space. A framework whose only point is the fixed vertex at the origin
    has no rotational motion, so its rho_0 block is trivially zero.
    """
    basis = symmetric_motion_space(fw, j)
    return _trivial_block(fw, basis, tolerance).shape[1]


def flex_motion(fw: Framework, j: int, tolerance: float = 1e-8) -> Optional[np.ndarray]:
    """!
    @brief A real non-trivial infinitesimal motion from the rho_j block.

    @details
    Takes the kernel of the restricted map, removes its trivial part,
    rotates the phase of the strongest remaining vector so its largest
    entry is real, and returns the real part (or the imaginary part when
    the real part vanishes).

    @return Motion as an array of shape (N, 2) in cover order, or None when
            the block has no non-trivial motion
    """
    basis = symmetric_motion_space(fw, j)
    restricted = rigidity_matrix(fw) @ basis.matrix
    rank = numeric_rank(restricted, tolerance)
    if basis.dimension == rank:
        return None
    if restricted.size:
        _, _, vh = np.linalg.svd(restricted)
        kernel = vh[rank:].conj().T
    else:
        kernel = np.eye(basis.dimension, dtype=complex)
    motions = basis.matrix @ kernel
    trivial = _trivial_block(fw, basis, tolerance)
    motions = motions - trivial @ (trivial.conj().T @ motions)
    norms = np.linalg.norm(motions, axis=0)
    best = int(np.argmax(norms))
    if norms[best] < tolerance:
        return None
    vector = motions[:, best]
    peak = vector[int(np.argmax(np.abs(vector)))]
    vector = vector * np.conj(peak) / abs(peak)
    real = vector.real if np.linalg.norm(vector.real) > tolerance else vector.imag
    return real.reshape(-1, 2)


@dataclass(frozen=True)
class GenericBlock:
    """!
    @brief Generic rank of one block over several configurations.
    """
    j: int
    rank: OrbitRank
    triv: int
    trial_ranks: tuple[int, ...]

    @property
    def isostatic(self) -> bool:
        return self.rank.nullity == self.triv and self.rank.rank == self.rank.rows


def generic_block(
    g: GainGraph,
    j: int,
    frameworks: Sequence[Framework],
    config: Optional[NumericConfig] = None,
) -> GenericBlock:
    """!
    @brief Maximum rho_j rank over sampled frameworks of g.

    @param g Gain graph
    @param j Representation index
    @param frameworks At least one framework realising g
    @param config Numeric settings
    @return The best rank with the trivial dimension of the block
    """
    config = config or NumericConfig()
    tol = config.rank_tolerance
    ranks = [orbit_rank(g, fw, j, tol, config.cross_check) for fw in frameworks]
    best = max(ranks, key=lambda r: r.rank)
    triv = framework_trivial_dimension(frameworks[0], j, tol)
    return GenericBlock(j, best, triv, tuple(r.rank for r in ranks))


def sample_frameworks(
    g: GainGraph, trials: int, seed: int, config: Optional[NumericConfig] = None
) -> list[Framework]:
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    return [sample_configuration(g, s, config) for s in spawn_seeds(seed, trials)]


class CombVerdict(Enum):
    TIGHT = "tight"
    SLACK = "slack"
    NA = "na"


def spec_for(k: int, j: int) -> CountSpec:
    """!
    @brief The count governing the rho_j block.

    @details
    gain:0,1 for j = 0, gain:1,1 for j = 1 or k-1, zkj:j otherwise.
    """
    _check_j(k, j)
    if j == 0:
        return CountSpec.gain(0, 1)
    if j in (1, k - 1):
        return CountSpec.gain(1, 1)
    return CountSpec.zkj(j)


## Alternative count evaluated beside gain:1,1 for j = 1 and j = k-1.
ALTERNATIVE_SPEC = CountSpec.gain(1, 2)


@dataclass
class BlockVerdict:
    """!
    @brief Combinatorial and numeric verdicts for one representation.
    """
    j: int
    spec: str
    comb: CombVerdict
    rank: int
    nullity: int
    triv: int
    dimension: int
    edges: int
    alt: Optional[CombVerdict] = None

    @property
    def rigid(self) -> bool:
        return self.nullity == self.triv

    @property
    def isostatic(self) -> bool:
        return self.rigid and self.rank == self.edges

    @property
    def agree(self) -> Optional[bool]:
        if self.comb is CombVerdict.NA:
            return None
        return (self.comb is CombVerdict.TIGHT) == self.rigid

    @property
    def alt_agree(self) -> Optional[bool]:
        if self.alt is None or self.alt is CombVerdict.NA:
            return None
        return (self.alt is CombVerdict.TIGHT) == self.rigid

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "j": self.j,
            "spec": self.spec,
            "comb": self.comb.value,
            "rank": self.rank,
            "null": self.nullity,
            "triv": self.triv,
            "iso": self.isostatic,
            "agree": self.agree,
        }
        if self.alt is not None:
            data["alt"] = self.alt.value
            data["alt_agree"] = self.alt_agree
        return data


@dataclass
class RigidityReport:
    """!
    @brief Per-representation verdicts and the overall rigidity decision.

    @param k Group order
    @param blocks One verdict per analysed j
    @param cover_rank Largest rank of the cover's rigidity matrix
    @param needed 2|V(cover)| - 3, the rank of an infinitesimally rigid cover
    @param certified Whether the counts characterise rigidity at this k
    @param trials Number of sampled configurations
    @param seed Root seed
    """
    k: int
    blocks: list[BlockVerdict]
    cover_rank: int
    needed: int
    cover_vertices: int
    certified: bool
    trials: int
    seed: int

    @property
    def rigid(self) -> bool:
        return self.cover_vertices <= 1 or self.cover_rank == self.needed

    @property
    def agree(self) -> bool:
        return all(block.agree is not False for block in self.blocks)

    @property
    def combinatorially_rigid(self) -> Optional[bool]:
        """Conjunction of the count clauses, None if any was skipped."""
        if any(block.comb is CombVerdict.NA for block in self.blocks):
            return None
        return all(block.comb is CombVerdict.TIGHT for block in self.blocks)

    def disagreements(self) -> list[int]:
        return [block.j for block in self.blocks if block.agree is False]

    def alternative_summary(self) -> Optional[dict[str, bool]]:
        """!
        @brief Which of gain:1,1 and gain:1,2 matched the numeric rho_{+-1} verdicts.
        """
        pairs = [b for b in self.blocks if b.alt is not None]
        if not pairs:
            return None
        return {
            "gain:1,1": all(b.agree is not False for b in pairs),
            "gain:1,2": all(b.alt_agree is not False for b in pairs),
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "trials": self.trials,
            "seed": self.seed,
            "blocks": [block.to_dict() for block in self.blocks],
            "rigid": self.rigid,
            "cover_rank": self.cover_rank,
            "needed": self.needed,
            "certified": self.certified,
            "agree": self.agree,
            "alternative": self.alternative_summary(),
        }


def _comb(g: GainGraph, spec: CountSpec, cap: Optional[int]) -> CombVerdict:
    found = greedy_tight_spanning(g, spec, cap=cap)
    return CombVerdict.TIGHT if found is not None else CombVerdict.SLACK


def analyze(
    g: GainGraph,
    trials: int = 20,
    seed: int = 0,
    js: Optional[Sequence[int]] = None,
    config: Optional[NumericConfig] = None,
    counts: bool = True,
    cap: Optional[int] = None,
) -> RigidityReport:
    """!
    @brief Compare the count verdicts with numeric generic ranks, block by block.

    @details
    For each j the combinatorial verdict asks for a tight spanning
    subgraph of the governing count; j = 1 and j = k-1 also evaluate the
    alternative count gain:1,2. The numeric verdict uses the maximum rank
    over ``trials`` sampled configurations. The overall decision compares
    the cover's rigidity matrix rank with 2|V(cover)| - 3.

    @param g Valid gain graph
    @param trials Number of sampled configurations (at least 1)
    @param seed Root seed
    @param js Representations to analyse (all when omitted)
    @param config Numeric settings
    @param counts Evaluate the combinatorial verdicts
    @param cap Subset enumeration cap for the counts
    @return The report
    @throws ValueError If trials < 1
    @throws CapacityError If a count exceeds the enumeration cap
    """
    config = config or NumericConfig()
    k = g.k
    selected = list(range(k)) if js is None else list(js)
    for j in selected:
        _check_j(k, j)

    frameworks = sample_frameworks(g, trials, seed, config)
    tol = config.rank_tolerance

    cover_rank = max(numeric_rank(rigidity_matrix(fw), tol) for fw in frameworks)
    cover_vertices = len(frameworks[0].cover.vertices)
    needed = max(2 * cover_vertices - 3, 0)

    blocks: list[BlockVerdict] = []
    for j in selected:
        generic = generic_block(g, j, frameworks, config)
        best, triv = generic.rank, generic.triv
        spec = spec_for(k, j)
        comb = _comb(g, spec, cap) if counts else CombVerdict.NA
        alt: Optional[CombVerdict] = None
        if j in (1, k - 1):
            alt = _comb(g, ALTERNATIVE_SPEC, cap) if counts else CombVerdict.NA
        block = BlockVerdict(
            j, str(spec), comb, best.rank, best.nullity, triv, best.dimension, best.rows, alt
        )
        logger.debug(
            f"rho_{j}: ranks {list(generic.trial_ranks)}, comb {comb.value}, triv {triv}"
        )
        blocks.append(block)

    report = RigidityReport(
        k, blocks, cover_rank, needed, cover_vertices, in_matroidal_regime(k), trials, seed
    )
    logger.info(
        f"analysed k={k}: rigid={report.rigid} cover_rank={cover_rank}/{needed}, "
        f"disagreements at {report.disagreements() or 'none'}"
    )
    return report

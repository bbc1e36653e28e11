"""!
@file analyzer.py
@brief Main high-level interface for symrigid.

@details
Combines loading, counting, numeric analysis, reduction, lifting and
random growth behind one object configured by a Config.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Optional

import numpy as np

from symrigid.config import Config
from symrigid.core.gain_graph import GainGraph
from symrigid.core.gallery import gallery
from symrigid.core.graph_io import load_source
from symrigid.counting.sparsity import CountFamily, CountSpec, SparsityVerdict, check
from symrigid.henneberg.bases import labelled_base
from symrigid.henneberg.certificate import Certificate
from symrigid.henneberg.growth import Growth, grow, with_fixed_vertex
from symrigid.henneberg.reduction import reduce_to_base
from symrigid.numeric.lifting import format_framework, sample_configuration
from symrigid.numeric.rigidity import RigidityReport, analyze, spec_for


class SymmetryAnalyzer:
    """!
    @brief Main interface for symmetric rigidity questions about gain graphs.

    @section analyzer_example Basic Usage
    @code{.py}
    from symrigid import SymmetryAnalyzer

    analyzer = SymmetryAnalyzer()
    g = analyzer.load("gallery:counterexample-loop", k=8)

    # Count verdict for the rho_4 block
    print(analyzer.check(g, ["zkj"], j=4)[0].describe())   # "tight"

    # Counts against numeric ranks, block by block
    report = analyzer.analyze(g)
    print(report.disagreements())                          # [4]
    @endcode
    """

    def __init__(self, config: Optional[Config] = None) -> None:
        self.config = config or Config()

    @property
    def cap(self) -> int:
        return self.config.counting.subset_cap

    def load(self, source: str, k: Optional[int] = None) -> GainGraph:
        """!
        @brief Load a graph from a file or a ``gallery:<name>`` pseudo-path.
        """
        return load_source(source, k)

    def check(
        self, g: GainGraph, specs: Sequence[str | CountSpec] = (), j: Optional[int] = None
    ) -> list[SparsityVerdict]:
        """!
        @brief Sparsity and tightness for each count.

        @details
        A ``zkj`` count without its own index takes j. With no counts
        given, the count governing the rho_j block is used, or plain:2,3
        when j is not given either.

        @param g Gain graph
        @param specs Count specifications, as text or CountSpec
        @param j Representation index
        @return One verdict per count
        """
        parsed = [CountSpec.parse(s) if isinstance(s, str) else s for s in specs]
        if not parsed:
            parsed = [spec_for(g.k, j) if j is not None else CountSpec.plain(2, 3)]
        bound = []
        for spec in parsed:
            if spec.family is CountFamily.ZKJ and spec.j is None and j is not None:
                spec = spec.with_j(j)
            bound.append(spec)
        return [check(g, spec, self.cap) for spec in bound]

    def analyze(
        self, g: GainGraph, js: Optional[Sequence[int]] = None, counts: bool = True
    ) -> RigidityReport:
        numeric = self.config.numeric
        return analyze(
            g, numeric.trials, numeric.seed, js, numeric, counts=counts, cap=self.cap
        )

    def reduce(self, g: GainGraph, j: int) -> Certificate:
        return reduce_to_base(g, j, self.cap, self.config.numeric)

    def lift(self, g: GainGraph) -> str:
        """!
        @brief Sample a symmetric framework for g and export its cover.
        """
        fw = sample_configuration(g, self.config.numeric.seed, self.config.numeric)
        return format_framework(fw)

    def gallery(self, name: str, k: int) -> GainGraph:
        return gallery(name, k)

    def random(
        self, base: str, k: int, j: int, steps: int, with_fixed: bool = False
    ) -> Growth:
        """!
        @brief Grow a tight graph from a labelled base graph.

        @details
        The generator is a Philox stream seeded from the configured seed, so
        equal settings give equal graphs.

        @param base Base shape name
        @param k Group order
        @param j Representation index
        @param steps Number of extensions
        @param with_fixed Join an isolated fixed vertex to the base first
        @return The growth record
        """
        start = labelled_base(base, k, j)
        if with_fixed:
            start = with_fixed_vertex(start)
        rng = np.random.Generator(np.random.Philox(self.config.numeric.seed))
        return grow(start, j, steps, rng, self.cap, self.config.numeric)

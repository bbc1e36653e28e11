"""!
@file __init__.py
@brief symrigid - symmetric infinitesimal rigidity of plane frameworks with rotational symmetry.

@details
Models C_k-symmetric frameworks by Z_k-gain graphs and decides, block by
block, whether they are infinitesimally rigid: exhaustive sparsity counts
on the combinatorial side, phase-weighted orbit matrices on the numeric
side, and Henneberg-type reductions that certify tight graphs.

@section usage Public API Usage

@code{.py}
from symrigid import SymmetryAnalyzer

analyzer = SymmetryAnalyzer()
g = analyzer.load("gallery:figure1", k=6)

report = analyzer.analyze(g)
print(report.rigid, report.disagreements())

cover = analyzer.lift(g)   # points and bonds of a sampled framework
@endcode

@author symrigid Contributors
@version 0.1.0
@copyright MIT License
"""

__version__ = "0.1.0"

from symrigid.analyzer import SymmetryAnalyzer
from symrigid.config import Config
from symrigid.core.cyclic import CyclicGroup, GroupElement
from symrigid.core.gain_graph import GainEdge, GainGraph, GainGraphBuilder, Vertex, validate
from symrigid.core.graph_io import format_graph, load_source, parse_graph
from symrigid.counting.sparsity import CountSpec, check
from symrigid.henneberg.reduction import reduce_to_base
from symrigid.numeric.rigidity import analyze, orbit_rank

__all__ = [
    # Main interface
    "SymmetryAnalyzer",
    # Core model
    "CyclicGroup",
    "GroupElement",
    "GainEdge",
    "GainGraph",
    "GainGraphBuilder",
    "Vertex",
    "validate",
    "parse_graph",
    "format_graph",
    "load_source",
    # Counts, ranks and certificates
    "CountSpec",
    "check",
    "analyze",
    "orbit_rank",
    "reduce_to_base",
    # Configuration
    "Config",
]

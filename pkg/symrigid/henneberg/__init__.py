"""!
@file henneberg/__init__.py
@brief Extensions, base graphs, reductions and certificates.
"""

from symrigid.henneberg.certificate import Certificate, format_certificate, replay
from symrigid.henneberg.moves import Move, MoveKind, apply_extension, apply_reduction
from symrigid.henneberg.reduction import find_reduction, reduce_to_base

__all__ = [
    "Certificate",
    "Move",
    "MoveKind",
    "apply_extension",
    "apply_reduction",
    "find_reduction",
    "format_certificate",
    "reduce_to_base",
    "replay",
]

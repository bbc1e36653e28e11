"""!
@file henneberg/certificate.py
@brief Reduction certificates, their replay and their text form.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from symrigid.core.gain_graph import GainGraph
from symrigid.henneberg.moves import ExtensionError, Move, apply_extension


class CertificateError(ValueError):
    """!
    @brief Raised when a certificate does not replay to its recorded hashes.
    """


class TerminalKind(Enum):
    BASE = "base"
    NUMERIC = "numeric"
    SPECIAL = "special-case"


@dataclass(frozen=True)
class Step:
    """!
    @brief One reduction, stored as the extension that undoes it.

    @param index 1-based position in reduction order
    @param move Extension taking the reduced graph back to the graph before the step
    @param result_hash Hash of the graph the extension produces
    """
    index: int
    move: Move
    result_hash: str


@dataclass(frozen=True)
class Terminal:
    """!
    @brief How a reduction sequence ended.

    @param kind Base graph, numeric verification or special case
    @param name Base name(s), ``numeric`` or ``special-case``
    @param detail Extra text: the isostatic flag or the blocked vertex
    @param isostatic Numeric verdict for a numeric terminal
    """
    kind: TerminalKind
    name: str
    detail: str = ""
    isostatic: Optional[bool] = None

    def __str__(self) -> str:
        if self.kind is TerminalKind.BASE:
            return self.name
        return f"{self.name} {self.detail}".strip()


@dataclass(frozen=True)
class Certificate:
    """!
    @brief Reduction sequence of a tight gain graph down to a terminal graph.

    @details
    Replaying the steps in reverse order from ``final`` rebuilds the input
    graph; each intermediate graph must match the recorded hash.
    """
    input_hash: str
    k: int
    j: int
    steps: tuple[Step, ...]
    terminal: Terminal
    final: GainGraph

    @property
    def special(self) -> bool:
        return self.terminal.kind is TerminalKind.SPECIAL

    def to_dict(self) -> dict[str, Any]:
        return {
            "input": self.input_hash,
            "k": self.k,
            "j": self.j,
            "steps": [
                {
                    "n": step.index,
                    "kind": step.move.kind.value,
                    "sites": step.move.sites(),
                    "gains": list(step.move.gains()),
                    "hash": step.result_hash,
                }
                for step in self.steps
            ],
            "terminal": {
                "kind": self.terminal.kind.value,
                "name": self.terminal.name,
                "detail": self.terminal.detail,
                "isostatic": self.terminal.isostatic,
            },
            "final": self.final.canonical_hash(),
        }


def replay(cert: Certificate) -> GainGraph:
    """!
    @brief Rebuild the certified graph from the terminal graph.

    @param cert Certificate
    @return The reconstructed input graph
    @throws CertificateError If a move fails or a hash differs
    """
    current = cert.final
    for step in reversed(cert.steps):
        try:
            current = apply_extension(current, step.move)
        except ExtensionError as e:
            raise CertificateError(f"step {step.index}: {e}") from e
        if current.canonical_hash() != step.result_hash:
            raise CertificateError(f"step {step.index}: hash mismatch")
    if current.canonical_hash() != cert.input_hash:
        raise CertificateError("replayed graph differs from the certified input")
    return current


def format_certificate(cert: Certificate) -> str:
    lines = [f"certificate k={cert.k} j={cert.j} input={cert.input_hash}"]
    for step in cert.steps:
        gains = ",".join(str(value) for value in step.move.gains())
        lines.append(f"step {step.index} {step.move.kind.value} {step.move.sites()} {gains}")
    lines.append(f"terminal {cert.terminal}")
    return "\n".join(lines) + "\n"

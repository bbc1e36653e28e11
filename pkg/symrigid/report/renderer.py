"""!
@file report/renderer.py
@brief Renders count verdicts, rigidity reports and certificates as text or JSON.

@details
Text is the primary output. The JSON renderer mirrors it with stable keys
for tooling.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import TYPE_CHECKING, Any, Optional

from symrigid.counting.sparsity import SparsityVerdict
from symrigid.henneberg.certificate import Certificate, format_certificate
from symrigid.numeric.rigidity import BlockVerdict, RigidityReport

if TYPE_CHECKING:
    from symrigid.config import Config


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return "na"
    return "true" if value else "false"


class BaseRenderer(ABC):
    """!
    @brief Abstract base class for result renderers.
    """

    def __init__(self, config: Config | None = None) -> None:
        if config is None:
            from symrigid.config import Config
            config = Config()
        self.config = config

    @abstractmethod
    def render_verdicts(self, verdicts: Sequence[SparsityVerdict]) -> str:
        """!
        @brief Render the count verdicts of one graph.
        """

    @abstractmethod
    def render_report(self, report: RigidityReport) -> str:
        """!
        @brief Render a rigidity report, one line per block then the overall line.
        """

    @abstractmethod
    def render_certificate(self, cert: Certificate) -> str:
        pass


class TextRenderer(BaseRenderer):
    """!
    @brief Line-oriented text output.

    @details
    A report renders as
    @code
    j=0 comb=tight rank=5 null=1 triv=1 iso=true agree=true
    j=1 comb=tight rank=6 null=1 triv=1 iso=true agree=true alt=slack
    rigid=true cover_rank=9 needed=9 certified=true
    @endcode
    """

    def render_verdicts(self, verdicts: Sequence[SparsityVerdict]) -> str:
        lines = []
        for verdict in verdicts:
            lines.append(f"{verdict.spec}: {verdict.describe()}")
            if verdict.witness is not None:
                w = verdict.witness
                lines.append(f"  witness: {' '.join(w.edges)} ({w.count} > {w.bound})")
        return "\n".join(lines) + "\n"

    def render_block(self, block: BlockVerdict) -> str:
        line = (
            f"j={block.j} comb={block.comb.value} rank={block.rank} null={block.nullity} "
            f"triv={block.triv} iso={_flag(block.isostatic)} agree={_flag(block.agree)}"
        )
        if block.alt is not None:
            line += f" alt={block.alt.value}"
        return line

    def render_report(self, report: RigidityReport) -> str:
        lines = [self.render_block(block) for block in report.blocks]
        lines.append(
            f"rigid={_flag(report.rigid)} cover_rank={report.cover_rank} "
            f"needed={report.needed} certified={_flag(report.certified)}"
        )
        return "\n".join(lines) + "\n"

    def render_certificate(self, cert: Certificate) -> str:
        return format_certificate(cert)


class JsonRenderer(BaseRenderer):
    """!
    @brief Indented JSON mirroring the text output.
    """

    @staticmethod
    def _dump(data: Any) -> str:
        return json.dumps(data, indent=2) + "\n"

    def render_verdicts(self, verdicts: Sequence[SparsityVerdict]) -> str:
        items = []
        for verdict in verdicts:
            item: dict[str, Any] = {
                "spec": str(verdict.spec),
                "sparse": verdict.sparse,
                "tight": verdict.tight,
                "edges": verdict.edge_count,
                "target": verdict.target,
            }
            if verdict.witness is not None:
                item["witness"] = {
                    "edges": list(verdict.witness.edges),
                    "count": verdict.witness.count,
                    "bound": verdict.witness.bound,
                }
            items.append(item)
        return self._dump({"verdicts": items})

    def render_report(self, report: RigidityReport) -> str:
        return self._dump(report.to_dict())

    def render_certificate(self, cert: Certificate) -> str:
        return self._dump(cert.to_dict())


def get_renderer(config: Config | None = None) -> BaseRenderer:
    """!
    @brief Renderer for the configured output format.
    """
    from symrigid.config import Config, OutputFormat

    config = config or Config()
    if config.output.format is OutputFormat.JSON:
        return JsonRenderer(config)
    return TextRenderer(config)

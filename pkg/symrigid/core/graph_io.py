"""!
@file core/graph_io.py
@brief Line-based text format for gain graphs.

@details
The format is UTF-8, one record per line, with ``#`` starting a comment:

@code
group 6
vertex v0 fixed
vertex u free
edge v0 u 0
edge u u 1
@endcode

The first record must be ``group <k>``. Edges receive the ids ``e0, e1,
...`` in file order unless a fifth token names the id explicitly; the
writer only emits ids that differ from that default, so reading back a
written graph reproduces it exactly. Parsed graphs must pass validate().

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from symrigid.core.cyclic import CyclicGroup
from symrigid.core.gain_graph import (
    GainEdge,
    GainGraph,
    GainGraphError,
    Vertex,
    VertexKind,
    validate,
)

GALLERY_PREFIX = "gallery:"


class GraphFormatError(ValueError):
    """!
    @brief Exception raised when a graph file cannot be read.

    @param message Error description
    @param line_number One-based line number where the error occurred (if known)
    @param line Offending source line
    """

    def __init__(
        self,
        message: str,
        line_number: Optional[int] = None,
        line: Optional[str] = None,
    ) -> None:
        self.message = message
        self.line_number = line_number
        self.line = line
        super().__init__(self._format_message())

    def _format_message(self) -> str:
        """Format error message with context."""
        msg = self.message
        if self.line_number is not None:
            msg = f"line {self.line_number}: {msg}"
            if self.line is not None:
                msg += f"\n  Context: {self.line.rstrip()}\n           ^"
        return msg


def _parse_int(token: str, what: str, number: int, raw: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"{what} must be an integer, got {token!r}", number, raw) from None


def parse_graph(text: str) -> GainGraph:
    """!
    @brief Parse the text format into a validated gain graph.

    @param text File contents
    @return The gain graph
    @throws GraphFormatError On syntax errors, out-of-range gains, unknown
            vertices or a graph that violates the gain graph clauses
    """
    group: Optional[CyclicGroup] = None
    vertices: list[Vertex] = []
    edges: list[GainEdge] = []
    names: set[str] = set()
    ids: set[str] = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]

        if group is None:
            if keyword != "group" or len(tokens) != 2:
                raise GraphFormatError("first record must be 'group <k>'", number, raw)
            k = _parse_int(tokens[1], "group order", number, raw)
            if k < 2:
                raise GraphFormatError(f"group order must be at least 2, got {k}", number, raw)
            group = CyclicGroup(k)
            continue

        if keyword == "group":
            raise GraphFormatError("duplicate group record", number, raw)

        if keyword == "vertex":
            if len(tokens) not in (2, 3):
                raise GraphFormatError("expected 'vertex <name> <free|fixed>'", number, raw)
            name = tokens[1]
            kind_token = tokens[2] if len(tokens) == 3 else "free"
            try:
                kind = VertexKind(kind_token)
            except ValueError:
                raise GraphFormatError(
                    f"vertex kind must be free or fixed, got {kind_token!r}", number, raw
                ) from None
            if name in names:
                raise GraphFormatError(f"duplicate vertex {name}", number, raw)
            names.add(name)
            vertices.append(Vertex(name, kind))

        elif keyword == "edge":
            if len(tokens) not in (4, 5):
                raise GraphFormatError("expected 'edge <tail> <head> <gain> [id]'", number, raw)
            tail, head = tokens[1], tokens[2]
            for name in (tail, head):
                if name not in names:
                    raise GraphFormatError(f"unknown vertex {name}", number, raw)
            gain = _parse_int(tokens[3], "gain", number, raw)
            if not 0 <= gain < group.k:
                raise GraphFormatError(
                    f"gain out of range: {gain} not in [0, {group.k - 1}]", number, raw
                )
            edge_id = tokens[4] if len(tokens) == 5 else f"e{len(edges)}"
            if edge_id in ids:
                raise GraphFormatError(f"duplicate edge id {edge_id}", number, raw)
            ids.add(edge_id)
            edges.append(GainEdge(edge_id, tail, head, group(gain)))

        else:
            raise GraphFormatError(f"unknown record {keyword!r}", number, raw)

    if group is None:
        raise GraphFormatError("missing 'group <k>' record")

    graph = GainGraph(group, tuple(vertices), tuple(edges))
    violations = validate(graph)
    if violations:
        raise GraphFormatError("invalid gain graph: " + "; ".join(str(v) for v in violations))
    return graph


def read_graph(path: str | Path) -> GainGraph:
    """!
    @brief Read a graph file.

    @throws OSError If the file cannot be opened
    @throws GraphFormatError If its contents are malformed
    """
    with open(Path(path), encoding="utf-8") as f:
        return parse_graph(f.read())


def format_graph(g: GainGraph) -> str:
    """!
    @brief Serialise a graph in the text format.

    @param g Gain graph
    @return Text ending in a newline
    """
    lines = [f"group {g.k}"]
    lines += [f"vertex {v.name} {v.kind.value}" for v in g.vertices]
    for index, e in enumerate(g.edges):
        record = f"edge {e.tail} {e.head} {e.gain.value}"
        if e.id != f"e{index}":
            record += f" {e.id}"
        lines.append(record)
    return "\n".join(lines) + "\n"


def write_graph(g: GainGraph, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_graph(g))


def load_source(source: str, k: Optional[int] = None) -> GainGraph:
    """!
    @brief Load a graph from a file path or a ``gallery:<name>`` pseudo-path.

    @param source Path or pseudo-path
    @param k Group order; required for gallery entries, checked against files
    @return The gain graph
    @throws GraphFormatError On a missing k or a k that contradicts the file
    """
    if source.startswith(GALLERY_PREFIX):
        from symrigid.core.gallery import gallery

        if k is None:
            raise GraphFormatError(f"{source} needs a group order (--k)")
        try:
            return gallery(source[len(GALLERY_PREFIX):], k)
        except GainGraphError as e:
            raise GraphFormatError(str(e)) from e

    graph = read_graph(source)
    if k is not None and k != graph.k:
        raise GraphFormatError(f"--k {k} contradicts 'group {graph.k}' in {source}")
    return graph

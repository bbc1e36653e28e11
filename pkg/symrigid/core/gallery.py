"""!
@file core/gallery.py
@brief Named gain graphs: counterexamples, worked examples and base graphs.

@details
Every entry is built for a caller-chosen k, subject to a per-entry
compatibility rule. Vertices are named ``u``, ``v`` (or descriptive names
for larger gadgets) with ``v0`` for the fixed vertex; edges get the
default ids ``e0, e1, ...`` in the order listed here, so loop ``f_1`` of a
counterexample is always ``e0``.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from symrigid.core.gain_graph import GainGraph, GainGraphBuilder, GainGraphError


@dataclass(frozen=True)
class GalleryEntry:
    """!
    @brief A named construction with its admissible group orders.

    @param build Builder taking k
    @param accepts Predicate on k
    @param requirement Human-readable form of the predicate
    @param summary One-line description
    """
    build: Callable[[int], GainGraph]
    accepts: Callable[[int], bool]
    requirement: str
    summary: str


def _counterexample_loop(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u")
    b.add_edge("u", "u", 1).add_edge("u", "u", 3)
    return b.build()


def _counterexample_fixed(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u").add_vertex("v").add_vertex("v0", fixed=True)
    b.add_edge("u", "u", 1)
    b.add_edge("u", "u", 3)
    b.add_edge("v", "v", 2)
    b.add_edge("u", "v", 0)
    b.add_edge("v", "v0", 0)
    return b.build()


def _figure1(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("v0", fixed=True).add_vertex("u").add_vertex("v")
    b.add_edge("v0", "u", 0)
    b.add_edge("u", "v", 0)
    b.add_edge("v", "u", 1)
    b.add_edge("u", "u", 1)
    return b.build()


def _near_balanced(k: int) -> GainGraph:
    b = GainGraphBuilder(k)
    for name in ("top", "bottom", "left", "right"):
        b.add_vertex(name)
    b.add_edge("top", "top", 1)
    b.add_edge("top", "bottom", 0)
    b.add_edge("bottom", "left", 0)
    b.add_edge("bottom", "right", 0)
    b.add_edge("right", "top", 0)
    b.add_edge("left", "top", 0)
    b.add_edge("top", "right", 1)
    b.add_edge("top", "left", 1)
    return b.build()


def _s0_example(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u").add_vertex("v0", fixed=True)
    b.add_edge("u", "u", 3).add_edge("u", "v0", 0)
    return b.build()


def _two_vertex_gadget(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("v0", fixed=True).add_vertex("u").add_vertex("v")
    b.add_edge("u", "v0", 0)
    b.add_edge("v", "v0", 0)
    b.add_edge("u", "v", 0)
    b.add_edge("v", "u", k // 2)
    return b.build()


def _special_case(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u").add_vertex("v").add_vertex("v0", fixed=True)
    b.add_edge("v", "u", 0)
    b.add_edge("u", "v", k // 2)
    b.add_edge("v", "v0", 0)
    b.add_edge("u", "u", 2)
    return b.build()


def _special_partner(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u").add_vertex("v").add_vertex("v0", fixed=True)
    b.add_edge("v", "u", 0)
    b.add_edge("u", "v", k // 2)
    b.add_edge("v", "v0", 0)
    b.add_edge("u", "v0", 0)
    return b.build()


def _loop_vertex(k: int) -> GainGraph:
    return GainGraphBuilder(k).add_vertex("u").add_edge("u", "u", 1).build()


def _fixed_edge(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u").add_vertex("v0", fixed=True)
    return b.add_edge("u", "v0", 0).build()


def _fixed_vertex(k: int) -> GainGraph:
    return GainGraphBuilder(k).add_vertex("v0", fixed=True).build()


def _loop_pair(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u")
    return b.add_edge("u", "u", 1).add_edge("u", "u", 2).build()


def _quad_edge(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u").add_vertex("v")
    b.add_edge("u", "v", 0)
    b.add_edge("u", "v", 1)
    b.add_edge("v", "u", 1)
    b.add_edge("v", "u", 2)
    return b.build()


def _delta_gadget(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("u").add_vertex("v")
    b.add_edge("u", "u", 1)
    b.add_edge("v", "v", 1)
    b.add_edge("u", "v", 1)
    b.add_edge("v", "u", 0)
    return b.build()


def _looped_triangle(k: int) -> GainGraph:
    b = GainGraphBuilder(k).add_vertex("top").add_vertex("u1").add_vertex("u2")
    b.add_edge("u1", "u2", 0)
    b.add_edge("top", "u1", 0)
    b.add_edge("top", "u2", 0)
    for name in ("u1", "u2", "top"):
        b.add_edge(name, name, 1)
    return b.build()


def _five_vertex(k: int) -> GainGraph:
    b = GainGraphBuilder(k)
    for name in ("top", "u1", "u2", "a", "b"):
        b.add_vertex(name)
    for tail, head in (
        ("u1", "u2"), ("top", "u1"), ("top", "u2"),
        ("u1", "a"), ("u2", "b"), ("u1", "b"), ("u2", "a"),
    ):
        b.add_edge(tail, head, 0)
    for name in ("a", "b", "top"):
        b.add_edge(name, name, 1)
    return b.build()


def _even(k: int) -> bool:
    return k % 2 == 0


_GALLERY: dict[str, GalleryEntry] = {
    "counterexample-loop": GalleryEntry(
        _counterexample_loop, lambda k: k >= 6, "k >= 6",
        "one vertex with loops of gain 1 and 3",
    ),
    "counterexample-fixed": GalleryEntry(
        _counterexample_fixed, lambda k: k >= 6, "k >= 6",
        "loops 1, 3 at u, loop 2 at v, edges u-v and v-v0",
    ),
    "figure1": GalleryEntry(
        _figure1, lambda k: k >= 3, "k >= 3",
        "fixed vertex, two free orbits, a 2-cycle and a loop",
    ),
    "near-balanced": GalleryEntry(
        _near_balanced, lambda k: k >= 4, "k >= 4",
        "four vertices, near-balanced at top with delta = 1",
    ),
    "s0-example": GalleryEntry(
        _s0_example, lambda k: k >= 4, "k >= 4",
        "loop of gain 3 at u joined to the fixed vertex",
    ),
    "two-vertex-gadget": GalleryEntry(
        _two_vertex_gadget, lambda k: _even(k) and k >= 4, "even k >= 4",
        "2-vertex extension of the isolated fixed vertex",
    ),
    "special-case": GalleryEntry(
        _special_case, lambda k: _even(k) and k >= 6, "even k >= 6",
        "half-turn 2-cycle at v with no admissible reduction",
    ),
    "special-partner": GalleryEntry(
        _special_partner, lambda k: _even(k) and k >= 4, "even k >= 4",
        "half-turn 2-cycle whose partner edge allows a 2-vertex reduction",
    ),
    "base-loop-vertex": GalleryEntry(
        _loop_vertex, lambda k: k >= 2, "k >= 2",
        "one vertex with one loop",
    ),
    "base-fixed-edge": GalleryEntry(
        _fixed_edge, lambda k: k >= 2, "k >= 2",
        "one free vertex joined to the fixed vertex",
    ),
    "base-fixed-vertex": GalleryEntry(
        _fixed_vertex, lambda k: k >= 2, "k >= 2",
        "the isolated fixed vertex",
    ),
    "base-loop-pair": GalleryEntry(
        _loop_pair, lambda k: k >= 4, "k >= 4",
        "one vertex with loops 1 and 2",
    ),
    "base-quad-edge": GalleryEntry(
        _quad_edge, lambda k: k >= 4, "k >= 4",
        "two vertices joined by four parallel edges",
    ),
    "base-delta-gadget": GalleryEntry(
        _delta_gadget, lambda k: k >= 3, "k >= 3",
        "two looped vertices joined by a 2-cycle of gain delta",
    ),
    "base-looped-triangle": GalleryEntry(
        _looped_triangle, lambda k: k >= 2, "k >= 2",
        "balanced triangle with a loop at every vertex",
    ),
    "base-five-vertex": GalleryEntry(
        _five_vertex, lambda k: k >= 2, "k >= 2",
        "balanced five-vertex gadget with three loops",
    ),
}

GALLERY_NAMES: tuple[str, ...] = tuple(_GALLERY)


def gallery(name: str, k: int) -> GainGraph:
    """!
    @brief Build a named gallery graph for the group Z_k.

    @param name Entry name, one of GALLERY_NAMES
    @param k Group order
    @return The gain graph
    @throws GainGraphError On an unknown name or an incompatible k
    """
    entry = _GALLERY.get(name)
    if entry is None:
        raise GainGraphError(f"unknown gallery graph: {name}")
    if not entry.accepts(k):
        raise GainGraphError(f"gallery graph {name} needs {entry.requirement}, got k={k}")
    return entry.build(k)


def describe(name: str) -> str:
    entry = _GALLERY.get(name)
    if entry is None:
        raise GainGraphError(f"unknown gallery graph: {name}")
    return f"{entry.summary} ({entry.requirement})"

"""Shared fixtures: gallery graphs, seeded generators and random gain graphs."""

from __future__ import annotations

import numpy as np
import pytest

from symrigid.config import NumericConfig
from symrigid.core.cyclic import CyclicGroup
from symrigid.core.gain_graph import GainEdge, GainGraph, Vertex, VertexKind, is_valid
from symrigid.core.gallery import gallery


def random_gain_graph(
    rng: np.random.Generator,
    k: int,
    free: int,
    edges: int,
    fixed: bool = False,
) -> GainGraph:
    """A valid random gain graph; edges that would break validity are skipped."""
    group = CyclicGroup(k)
    vertices = [Vertex(f"u{i}") for i in range(free)]
    if fixed:
        vertices.append(Vertex("v0", VertexKind.FIXED))
    names = [v.name for v in vertices]
    chosen: list[GainEdge] = []
    for _ in range(20 * edges):
        if len(chosen) == edges:
            break
        tail = names[int(rng.integers(len(names)))]
        head = names[int(rng.integers(len(names)))]
        edge = GainEdge(f"e{len(chosen)}", tail, head, group(int(rng.integers(k))))
        candidate = GainGraph(group, tuple(vertices), tuple(chosen) + (edge,))
        if is_valid(candidate):
            chosen.append(edge)
    return GainGraph(group, tuple(vertices), tuple(chosen))


@pytest.fixture
def random_graph():
    return random_gain_graph


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.Philox(12345))


@pytest.fixture
def fast_numeric() -> NumericConfig:
    return NumericConfig(trials=5, seed=3)


@pytest.fixture
def figure1() -> GainGraph:
    return gallery("figure1", 6)


@pytest.fixture
def counterexample_loop() -> GainGraph:
    return gallery("counterexample-loop", 8)


@pytest.fixture
def special_case() -> GainGraph:
    return gallery("special-case", 6)


@pytest.fixture
def special_partner() -> GainGraph:
    return gallery("special-partner", 6)


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text(
        "# balanced triangle\n"
        "group 6\n"
        "vertex a free\n"
        "vertex b free\n"
        "vertex c free\n"
        "edge a b 0\n"
        "edge b c 0\n"
        "edge c a 0\n",
        encoding="utf-8",
    )
    return path


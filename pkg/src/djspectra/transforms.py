"""Subdivision, merged subdivision and the double join.

Vertex layout of every construction here is fixed:

    [ e-vertices (one per edge of G) | v-vertices (G) | G1 | G2 ]

so block ``i`` of a distance matrix always means the same thing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import NoEdgesError, SizeError
from .graph import (
    Graph,
    complement,
    line_graph,
    make_complete,
    make_empty,
)


class H1Kind(str, enum.Enum):
    """Graph placed on the e-vertices."""

    EMPTY = "empty"
    COMPLETE = "complete"
    LINE = "line"
    COMPLEMENT_LINE = "compline"


class H2Kind(str, enum.Enum):
    """Graph placed on the original vertices."""

    EMPTY = "empty"
    COMPLETE = "complete"
    SAME = "same"
    COMPLEMENT = "comp"


def h1_graph(g: Graph, kind: H1Kind) -> Graph:
    kind = H1Kind(kind)
    if kind is H1Kind.EMPTY:
        return make_empty(g.m)
    if kind is H1Kind.COMPLETE:
        return make_complete(g.m)
    if kind is H1Kind.LINE:
        return line_graph(g)
    return complement(line_graph(g))


def h2_graph(g: Graph, kind: H2Kind) -> Graph:
    kind = H2Kind(kind)
    if kind is H2Kind.EMPTY:
        return make_empty(g.n)
    if kind is H2Kind.COMPLETE:
        return make_complete(g.n)
    if kind is H2Kind.SAME:
        return g
    return complement(g)


@dataclass(frozen=True)
class MergedSubdivision:
    base: Graph
    h1_kind: H1Kind
    h2_kind: H2Kind
    graph: Graph

    @property
    def h1(self) -> Graph:
        return h1_graph(self.base, self.h1_kind)

    @property
    def h2(self) -> Graph:
        return h2_graph(self.base, self.h2_kind)


@dataclass(frozen=True)
class BlockedGraph:
    """A double join together with its four-block vertex partition.

    ``core`` is None for graphs built through :func:`double_join_raw`, which
    carry no kind information and therefore no closed form.
    """

    core: Optional[MergedSubdivision]
    g1: Graph
    g2: Graph
    graph: Graph
    sizes: tuple[int, int, int, int]

    @property
    def blocks(self) -> tuple[slice, slice, slice, slice]:
        m, n, p, q = self.sizes
        return (
            slice(0, m),
            slice(m, m + n),
            slice(m + n, m + n + p),
            slice(m + n + p, m + n + p + q),
        )

    def to_dict(self) -> dict:
        m, n, p, q = self.sizes
        out = self.graph.to_dict()
        out["blocks"] = {"m": m, "n": n, "p": p, "q": q}
        if self.core is not None:
            out["kinds"] = {"h1": self.core.h1_kind.value, "h2": self.core.h2_kind.value}
            out["base"] = self.core.base.to_dict()
        out["g1"] = self.g1.to_dict()
        out["g2"] = self.g2.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "BlockedGraph":
        g1 = Graph.from_dict(data["g1"])
        g2 = Graph.from_dict(data["g2"])
        if "kinds" in data:
            core = merged_subdivision(
                Graph.from_dict(data["base"]), data["kinds"]["h1"], data["kinds"]["h2"]
            )
            return double_join(core, g1, g2)
        b = data["blocks"]
        size = b["m"] + b["n"]
        full = Graph.from_dict(data)
        core = Graph(size, tuple(e for e in full.edges if e[1] < size))
        out = double_join_raw(core, g1, g2, b["m"], b["n"])
        if out.graph != full:
            raise ValueError("graph edges are inconsistent with the stated blocks")
        return out


def subdivision(g: Graph) -> Graph:
    if g.m == 0:
        raise NoEdgesError("subdivision needs at least one edge")
    m = g.m
    edges = []
    for k, (i, j) in enumerate(g.edges):
        edges.append((k, m + i))
        edges.append((k, m + j))
    return Graph(m + g.n, tuple(sorted(edges)))


def merged_subdivision(g: Graph, h1_kind=H1Kind.EMPTY, h2_kind=H2Kind.EMPTY) -> MergedSubdivision:
    if g.m == 0:
        raise NoEdgesError("merged subdivision needs at least one edge")
    h1_kind, h2_kind = H1Kind(h1_kind), H2Kind(h2_kind)
    m = g.m
    edges = list(subdivision(g).edges)
    edges.extend(h1_graph(g, h1_kind).edges)
    edges.extend((i + m, j + m) for i, j in h2_graph(g, h2_kind).edges)
    return MergedSubdivision(g, h1_kind, h2_kind, Graph(m + g.n, tuple(sorted(edges))))


def double_join(core: MergedSubdivision, g1: Graph, g2: Graph) -> BlockedGraph:
    """Join every e-vertex to all of ``g1`` and every v-vertex to all of ``g2``."""
    bg = double_join_raw(core.graph, g1, g2, core.base.m, core.base.n)
    return BlockedGraph(core, g1, g2, bg.graph, bg.sizes)


def double_join_raw(core_graph: Graph, g1: Graph, g2: Graph, m: int, n: int) -> BlockedGraph:
    """Double join of an arbitrary graph whose first ``m`` vertices are the
    e-side and next ``n`` the v-side.  Only the numeric path applies to it."""
    if core_graph.n != m + n:
        raise SizeError(f"core graph has {core_graph.n} vertices, expected m+n={m + n}")
    p, q = g1.n, g2.n
    if p < 1 or q < 1:
        raise SizeError("double join needs non-empty G1 and G2")
    o1, o2 = m + n, m + n + p
    edges = list(core_graph.edges)
    edges.extend((i + o1, j + o1) for i, j in g1.edges)
    edges.extend((i + o2, j + o2) for i, j in g2.edges)
    edges.extend((e, o1 + x) for e in range(m) for x in range(p))
    edges.extend((m + v, o2 + y) for v in range(n) for y in range(q))
    graph = Graph(m + n + p + q, tuple(sorted(edges)))
    return BlockedGraph(None, g1, g2, graph, (m, n, p, q))

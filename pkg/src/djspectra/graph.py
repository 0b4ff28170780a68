"""Simple undirected graphs, generators and elementary operations.

Graphs are small and dense.  The edge list is kept in lexicographic order so
that the edge labels e_1..e_m used by subdivision constructions (and the
rows of the incidence matrix) are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EmptyListError, NoEdgesError, SizeError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Build instances through :meth:`from_edges`, which normalises and
    validates the edge list; the dataclass constructor assumes it is
    already sorted and duplicate free.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise SizeError(f"graph needs at least one vertex, got n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> "Graph":
        norm = set()
        for e in edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            pair = (min(i, j), max(i, j))
            if pair in norm:
                raise ValueError(f"duplicate edge {pair}")
            norm.add(pair)
        return cls(n, tuple(sorted(norm)))

    @classmethod
    def from_adjacency(cls, adjacency) -> "Graph":
        a = np.asarray(adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(a, a.T) or np.any(np.diag(a)):
            raise ValueError("adjacency must be symmetric with zero diagonal")
        i, j = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], tuple(zip(i.tolist(), j.tolist())))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.neighbors)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        return cls.from_edges(int(data["n"]), data.get("edges", ()))


@dataclass(frozen=True)
class GraphChecks:
    is_connected: bool
    regularity: Optional[int]
    is_triangle_free: bool

    @property
    def is_regular(self) -> bool:
        return self.regularity is not None


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise SizeError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def make_complete(n: int) -> Graph:
    if n < 1:
        raise SizeError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, tuple(combinations(range(n), 2)))


def make_empty(n: int) -> Graph:
    if n < 1:
        raise SizeError(f"empty graph needs n >= 1, got {n}")
    return Graph(n, ())


def complement(g: Graph) -> Graph:
    present = set(g.edges)
    return Graph(g.n, tuple(e for e in combinations(range(g.n), 2) if e not in present))


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    """Place the graphs side by side, in list order, relabelling by offset."""
    if not gs:
        raise EmptyListError("disjoint_union needs at least one graph")
    edges = []
    offset = 0
    for g in gs:
        edges.extend((i + offset, j + offset) for i, j in g.edges)
        offset += g.n
    return Graph(offset, tuple(sorted(edges)))


def line_graph(g: Graph) -> Graph:
    """Line graph whose vertex ``i`` is the edge ``g.edges[i]``."""
    if g.m == 0:
        raise NoEdgesError("line graph of an edgeless graph is empty")
    edges = [
        (a, b)
        for (a, ea), (b, eb) in combinations(enumerate(g.edges), 2)
        if set(ea) & set(eb)
    ]
    return Graph(g.m, tuple(edges))


def incidence(g: Graph) -> np.ndarray:
    """Edge-vertex incidence matrix, shape ``(m, n)``, rows in edge-list order."""
    if g.m == 0:
        raise NoEdgesError("incidence matrix needs at least one edge")
    mat = np.zeros((g.m, g.n), dtype=np.int64)
    rows = np.arange(g.m)
    e = np.asarray(g.edges)
    mat[rows, e[:, 0]] = 1
    mat[rows, e[:, 1]] = 1
    return mat


def is_connected(g: Graph) -> bool:
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.n


def checks(g: Graph) -> GraphChecks:
    """Connectivity, regularity and triangle-freeness in one pass."""
    degs = set(g.degrees)
    regularity = degs.pop() if len(degs) == 1 else None
    a = g.adjacency
    # trace(A^3) counts each triangle six times; exact in integers
    triangles = int(np.einsum("ij,jk,ki->", a, a, a))
    return GraphChecks(is_connected(g), regularity, triangles == 0)


def component_sizes(g: Graph) -> tuple[int, ...]:
    """Sizes of the connected components, non-increasing."""
    seen = [False] * g.n
    sizes = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        size = 0
        while queue:
            u = queue.popleft()
            size += 1
            for w in g.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        sizes.append(size)
    return tuple(sorted(sizes, reverse=True))

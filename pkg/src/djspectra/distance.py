"""All-pairs distances, distance energy and block distance templates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DisconnectedError
from .graph import Graph, incidence
from .numlin import Spectrum, eigen_sym, energy
from .transforms import BlockedGraph


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance_matrix(g: Graph) -> np.ndarray:
    """Integer distance matrix from one BFS per vertex."""
    d = np.vstack([bfs_distances(g, s) for s in range(g.n)])
    if np.any(d < 0):
        raise DisconnectedError("distance matrix is undefined for a disconnected graph")
    return d


def diameter(g: Graph) -> int:
    return int(distance_matrix(g).max())


def distance_spectrum(g: Graph) -> Spectrum:
    return eigen_sym(distance_matrix(g))


def distance_energy(g: Graph) -> float:
    return energy(distance_spectrum(g))


def distance_csv(d: np.ndarray) -> str:
    return "".join(",".join(str(int(x)) for x in row) + "\n" for row in d)


# A block pattern is a linear combination of named matrices:
#   J (all ones), I (identity), M (incidence of G, e x v),
#   G, H1, H2, G1, G2 (adjacency matrices).
Pattern = dict


@dataclass(frozen=True)
class TemplateSpec:
    """Block form of the distance matrix of a double join.

    ``ee``, ``ev`` and ``vv`` vary by theorem; the blocks touching G1 and G2
    are the same for all four and are driven by ``s``, ``k``, ``l``.
    """

    theorem_id: str
    ee: Pattern
    ev: Pattern
    vv: Pattern
    s: int = 1
    k: int = 2
    l: int = 3
    g1g1: Pattern = field(default_factory=lambda: {"J": 2, "I": -2, "G1": -1})
    g2g2: Pattern = field(default_factory=lambda: {"J": 2, "I": -2, "G2": -1})


TEMPLATES = {
    "T32": TemplateSpec(
        "T32",
        ee={"J": 2, "I": -2},
        ev={"J": 3, "M": -2},
        vv={"J": 2, "I": -2},
    ),
    "T33": TemplateSpec(
        "T33",
        ee={"J": 2, "I": -2, "H1": -1},
        ev={"J": 2, "M": -1},
        vv={"J": 1, "I": -1, "G": 1},
    ),
    "T34": TemplateSpec(
        "T34",
        ee={"J": 1, "I": -1},
        ev={"J": 2, "M": -1},
        vv={"J": 2, "I": -2, "H2": -1},
    ),
    "T35": TemplateSpec(
        "T35",
        ee={"J": 2, "I": -2, "H1": -1},
        ev={"J": 2, "M": -1},
        vv={"J": 1, "I": -1},
    ),
}


def _block(pattern: Pattern, shape: tuple[int, int], named: dict) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int64)
    for name, coef in pattern.items():
        if name == "J":
            out += coef
        elif name == "I":
            out += coef * np.eye(shape[0], dtype=np.int64)
        else:
            out += coef * named[name]
    return out


def template_matrix(bg: BlockedGraph, spec: TemplateSpec) -> np.ndarray:
    """Distance matrix implied by ``spec`` for the blocks of ``bg``.

    The H1/H2/M patches are read off the constructed graph itself, so the
    template is evaluated against what was actually built.
    """
    m, n, p, q = bg.sizes
    e, v, x1, x2 = bg.blocks
    a = bg.graph.adjacency
    named = {
        "H1": a[e, e],
        "H2": a[v, v],
        "G1": a[x1, x1],
        "G2": a[x2, x2],
        "M": a[e, v],
    }
    if bg.core is not None:
        named["G"] = bg.core.base.adjacency
        named["M"] = incidence(bg.core.base)
    else:
        named["G"] = a[v, v]
    s, k, l = spec.s, spec.k, spec.l
    ev = _block(spec.ev, (m, n), named)
    rows = [
        [_block(spec.ee, (m, m), named), ev, np.full((m, p), s), np.full((m, q), k)],
        [ev.T, _block(spec.vv, (n, n), named), np.full((n, p), k), np.full((n, q), s)],
        [np.full((p, m), s), np.full((p, n), k), _block(spec.g1g1, (p, p), named), np.full((p, q), l)],
        [np.full((q, m), k), np.full((q, n), s), np.full((q, p), l), _block(spec.g2g2, (q, q), named)],
    ]
    return np.block(rows)


@dataclass(frozen=True)
class TemplateCheck:
    ok: bool
    first_violation: Optional[tuple[int, int, int, int]] = None

    def to_dict(self) -> dict:
        fv = None
        if self.first_violation is not None:
            i, j, expected, actual = self.first_violation
            fv = {"i": i, "j": j, "expected": expected, "actual": actual}
        return {"ok": self.ok, "first_violation": fv}


def validate_template(bg: BlockedGraph, spec: TemplateSpec | str) -> TemplateCheck:
    """Compare BFS distances of ``bg`` with the block template, exactly.

    A mismatch is reported as data: the first differing ``(i, j)`` in
    row-major order with the template value and the BFS value.
    """
    if isinstance(spec, str):
        spec = TEMPLATES[spec]
    actual = distance_matrix(bg.graph)
    expected = template_matrix(bg, spec)
    bad = np.argwhere(actual != expected)
    if bad.size == 0:
        return TemplateCheck(True)
    i, j = (int(x) for x in bad[0])
    return TemplateCheck(False, (i, j, int(expected[i, j]), int(actual[i, j])))

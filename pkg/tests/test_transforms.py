import itertools

import networkx as nx
import numpy as np
import pytest

from djspectra import Graph, NoEdgesError, SizeError, make_complete, make_cycle, make_empty
from djspectra.graph import line_graph
from djspectra.transforms import (
    BlockedGraph,
    H1Kind,
    H2Kind,
    double_join,
    double_join_raw,
    merged_subdivision,
    subdivision,
)


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def reference_double_join(g, h1, h2, g1, g2):
    """Builds the construction from the vertex-level definition with networkx."""
    out = nx.Graph()
    E = [("e", k) for k in range(g.m)]
    V = [("v", i) for i in range(g.n)]
    P = [("p", i) for i in range(g1.n)]
    Q = [("q", i) for i in range(g2.n)]
    out.add_nodes_from(E + V + P + Q)
    for k, (i, j) in enumerate(g.edges):
        out.add_edge(("e", k), ("v", i))
        out.add_edge(("e", k), ("v", j))
    for (k1, e1), (k2, e2) in itertools.combinations(enumerate(g.edges), 2):
        share = bool(set(e1) & set(e2))
        link = {"empty": False, "complete": True, "line": share, "compline": not share}[h1]
        if link:
            out.add_edge(("e", k1), ("e", k2))
    for i, j in itertools.combinations(range(g.n), 2):
        adj = (i, j) in g.edges
        link = {"empty": False, "complete": True, "same": adj, "comp": not adj}[h2]
        if link:
            out.add_edge(("v", i), ("v", j))
    out.add_edges_from((("p", i), ("p", j)) for i, j in g1.edges)
    out.add_edges_from((("q", i), ("q", j)) for i, j in g2.edges)
    out.add_edges_from((e, x) for e in E for x in P)
    out.add_edges_from((v, y) for v in V for y in Q)
    return out


def test_subdivision_of_cycles_and_edge():
    assert nx.is_isomorphic(_nx(subdivision(make_cycle(4))), nx.cycle_graph(8))
    assert nx.is_isomorphic(_nx(subdivision(make_cycle(3))), nx.cycle_graph(6))
    assert nx.is_isomorphic(_nx(subdivision(make_complete(2))), nx.path_graph(3))
    with pytest.raises(NoEdgesError):
        subdivision(make_empty(3))


def test_merged_subdivision_examples():
    assert nx.is_isomorphic(_nx(merged_subdivision(make_cycle(4)).graph), nx.cycle_graph(8))
    q = merged_subdivision(make_cycle(3), H1Kind.LINE, H2Kind.EMPTY).graph
    assert (q.n, q.m) == (6, 9)
    r = merged_subdivision(make_cycle(4), "empty", "same").graph
    assert (r.n, r.m) == (8, 12)


def test_h_graphs_follow_kinds():
    g = make_complete(4)
    core = merged_subdivision(g, H1Kind.COMPLEMENT_LINE, H2Kind.COMPLEMENT)
    assert core.h1.m == 6 * 5 // 2 - line_graph(g).m
    assert core.h2.m == 0
    assert merged_subdivision(g, "complete", "complete").h2.m == 6


def test_double_join_counts():
    bg = double_join(merged_subdivision(make_cycle(4)), make_cycle(3), make_cycle(3))
    assert (bg.graph.n, bg.graph.m) == (14, 38)
    fig = double_join(merged_subdivision(make_cycle(4), "complete", "empty"), make_cycle(3), make_complete(4))
    assert (fig.graph.n, fig.graph.m) == (15, 51)
    assert bg.sizes == (4, 4, 3, 3)


@pytest.mark.parametrize("h1", [k.value for k in H1Kind])
@pytest.mark.parametrize("h2", [k.value for k in H2Kind])
@pytest.mark.parametrize("g", [make_cycle(5), make_complete(4)], ids=["C5", "K4"])
def test_double_join_matches_vertex_level_definition(g, h1, h2):
    g1, g2 = make_cycle(3), make_complete(4)
    bg = double_join(merged_subdivision(g, h1, h2), g1, g2)
    ref = reference_double_join(g, h1, h2, g1, g2)
    labels = ([("e", k) for k in range(g.m)] + [("v", i) for i in range(g.n)]
              + [("p", i) for i in range(g1.n)] + [("q", i) for i in range(g2.n)])
    ref_adj = nx.to_numpy_array(ref, nodelist=labels, dtype=int)
    assert np.array_equal(bg.graph.adjacency, ref_adj)


def test_blocks_partition_vertices():
    bg = double_join(merged_subdivision(make_cycle(5)), make_cycle(3), make_cycle(4))
    e, v, p, q = bg.blocks
    assert [s.stop - s.start for s in bg.blocks] == [5, 5, 3, 4]
    assert e.start == 0 and q.stop == bg.graph.n
    a = bg.graph.adjacency
    assert np.all(a[e, p] == 1) and np.all(a[v, q] == 1)
    assert not np.any(a[e, q]) and not np.any(a[v, p]) and not np.any(a[p, q])


def test_json_round_trip_with_and_without_kinds():
    bg = double_join(merged_subdivision(make_cycle(4), "line", "comp"), make_cycle(3), make_complete(2))
    back = BlockedGraph.from_dict(bg.to_dict())
    assert back == bg
    raw = double_join_raw(bg.core.graph, bg.g1, bg.g2, 4, 4)
    data = raw.to_dict()
    assert "kinds" not in data and data["blocks"] == {"m": 4, "n": 4, "p": 3, "q": 2}
    back_raw = BlockedGraph.from_dict(data)
    assert back_raw.core is None and back_raw.graph == bg.graph


def test_double_join_raw_size_checks():
    core = merged_subdivision(make_cycle(4)).graph
    with pytest.raises(SizeError):
        double_join_raw(core, make_cycle(3), make_cycle(3), 4, 5)
    with pytest.raises(SizeError):
        Graph(0)

"""Small hand-made instances built through networkx planar embeddings."""

from __future__ import annotations

import networkx as nx

from bookbind.graph_core import EmbeddedMultigraph, trace_faces
from bookbind.instances import witness_from_embedding


def embedded(G: nx.Graph, outer: set[int] | None = None) -> EmbeddedMultigraph:
    """Planar embedding of ``G``; ``outer`` picks the outer face by its vertex set."""
    ok, emb = nx.check_planarity(G)
    assert ok, "graph is not planar"
    n = G.number_of_nodes()
    rot = [list(reversed(list(emb.neighbors_cw_order(v)))) for v in range(n)]
    g = EmbeddedMultigraph.from_neighbor_rotation(n, rot)
    if outer is None:
        return g
    for f in trace_faces(g):
        if set(f.vertices) == outer:
            return g.with_outer(f.half_edges[0])
    raise AssertionError(f"no face with vertices {sorted(outer)}")


def planar_witness(G: nx.Graph, outer: set[int] | None = None, k: int = 3):
    return witness_from_embedding(embedded(G, outer), k)


def nested_triangles(layers: int = 3) -> nx.Graph:
    G = nx.Graph()
    for i in range(layers):
        a = [3 * i + j for j in range(3)]
        G.add_edges_from((a[j], a[(j + 1) % 3]) for j in range(3))
        if i:
            b = [3 * (i - 1) + j for j in range(3)]
            for j in range(3):
                G.add_edge(b[j], a[j])
                G.add_edge(b[(j + 1) % 3], a[j])
    return G

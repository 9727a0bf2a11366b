"""Greedy rainbow embedding into hypercube subgraphs of minimum degree k.

Vertex x_i goes to a neighbor v_i of v_{i'} reached by an edge f_i whose
color is new and whose coordinate differs from the coordinate of every
earlier f_j with e_j e_i in H.  When H meets the degree and chromatic
hypotheses, an admissible neighbor exists at every step and the images are
distinct; both facts are re-checked here rather than assumed.
"""

from __future__ import annotations

from ..colorings import EdgeColoring, require_proper
from ..errors import PreconditionError
from ..graph import Graph
from ..trees import LeafOrdering, Tree
from .aux import AuxGraph
from .search import Embedding
from .trace import violation


def coordinate_embed(G: Graph, phi: EdgeColoring, T: Tree, ordering: LeafOrdering,
                     H: AuxGraph, v0: int | None = None) -> Embedding:
    k = T.k
    if G.cube_dim is None:
        raise PreconditionError("coordinate embedding needs a hypercube-tagged host")
    require_proper(G, phi)
    if H.tree != T or H.ordering != ordering:
        raise PreconditionError("auxiliary graph was built for a different tree or ordering")
    if G.m == 0 or G.min_degree() < k:
        raise PreconditionError(f"host minimum degree {G.min_degree()} is below k = {k}")
    report = H.report
    if not report.ok:
        raise PreconditionError("auxiliary graph fails the hypotheses: " + "; ".join(report.violations[:3]))
    if v0 is None:
        v0 = G.active_vertices[0]
    elif not 0 <= v0 < G.vertex_count or G.degrees[v0] == 0:
        raise PreconditionError(f"start vertex {v0} is isolated or outside the host")

    coords = G.coordinates
    colors = phi.colors
    prev = ordering.prev
    adj = H.adjacency
    images = [-1] * (k + 1)
    eids = [-1] * k
    used_colors: set[int] = set()
    images[0] = v0
    for i in range(1, k + 1):
        banned = {coords[eids[j - 1]] for j in range(1, i) if adj[i] >> j & 1}
        for w, eid in G.incident[images[prev[i]]]:
            if colors[eid] not in used_colors and coords[eid] not in banned:
                break
        else:
            raise violation(f"no admissible neighbor at step {i}", G, phi, T, ordering,
                            images, [colors[e] for e in eids if e >= 0])
        images[i] = w
        eids[i - 1] = eid
        used_colors.add(colors[eid])
    emb_colors = tuple(colors[e] for e in eids)
    if len(set(images)) != len(images):
        raise violation("coordinate embedding is not injective", G, phi, T, ordering,
                        images, emb_colors)
    return Embedding(T, ordering, tuple(images), tuple(eids), emb_colors)

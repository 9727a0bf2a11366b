"""Greedy rainbow tree embeddings driven by minimum degree.

* ``greedy_embed_min_degree``: with delta >= 2k each step rules out at most
  i - 1 used vertices and i - 1 used colors, so a choice always remains.
* ``k2r_embed``: in a K_{2,r}-free host with delta > 2k + r - 3 the tree can
  be placed so that v_i ~ v_0 exactly when x_i ~ x_0.
* ``embed_many_leaves``: embed the tree minus the leaves of a leaf-heavy
  vertex with ``k2r_embed``, then hang those leaves greedily.

All choices take the smallest admissible vertex id.
"""

from __future__ import annotations

from fractions import Fraction

from ..colorings import EdgeColoring, require_proper
from ..errors import PreconditionError
from ..graph import Graph, is_k2r_free
from ..trees import LeafOrdering, Tree, leaves_per_vertex, ordering_from_sequence
from .search import Embedding, validate_embedding
from .trace import violation


def _start_pair(G: Graph, start_edge) -> tuple[int, int]:
    if isinstance(start_edge, int):
        if not 0 <= start_edge < G.m:
            raise PreconditionError(f"start edge id {start_edge} out of range")
        return G.edges[start_edge]
    u, v = start_edge
    if not G.has_edge(u, v):
        raise PreconditionError(f"start edge ({u}, {v}) is not in the host")
    return u, v


def _finish(G: Graph, phi: EdgeColoring, T: Tree, ordering: LeafOrdering, images: list[int]) -> Embedding:
    eids = tuple(G.edge_id(images[ordering.prev[i]], images[i]) for i in range(1, T.k + 1))
    emb = Embedding(T, ordering, tuple(images), eids, tuple(phi.colors[e] for e in eids))
    problems = validate_embedding(G, phi, T, emb.vertex_map)
    if problems:
        raise violation("embedding failed validation: " + "; ".join(problems), G, phi, T,
                        ordering, images, emb.colors)
    return emb


def greedy_embed_min_degree(G: Graph, phi: EdgeColoring, T: Tree, ordering: LeafOrdering,
                            start_edge) -> Embedding:
    """Rainbow copy of ``T`` with e_1 placed on ``start_edge`` (id or vertex pair)."""
    k = T.k
    require_proper(G, phi)
    if G.min_degree() < 2 * k:
        raise PreconditionError(f"host minimum degree {G.min_degree()} is below 2k = {2 * k}")
    if k == 0:
        raise PreconditionError("tree needs at least one edge")
    u, v = _start_pair(G, start_edge)
    colors = phi.colors
    images = [-1] * (k + 1)
    images[0], images[1] = u, v
    used_v = {u, v}
    used_c = {colors[G.edge_id(u, v)]}
    prev = ordering.prev
    for i in range(2, k + 1):
        for w, eid in G.incident[images[prev[i]]]:
            if w not in used_v and colors[eid] not in used_c:
                break
        else:
            raise violation(f"no free neighbor at step {i}", G, phi, T, ordering, images,
                            [colors[G.edge_id(images[prev[j]], images[j])] for j in range(1, i)])
        images[i] = w
        used_v.add(w)
        used_c.add(colors[eid])
    return _finish(G, phi, T, ordering, images)


def _k2r_steps(G: Graph, colors, prev, images: list[int], steps: int) -> int | None:
    """Fill images[1..steps] in place; return the failing step or None."""
    v0 = images[0]
    near = G.masks[v0]
    used_v = {v0}
    used_c: set[int] = set()
    for i in range(1, steps + 1):
        anchor = images[prev[i]]
        for w, eid in G.incident[anchor]:
            if w in used_v or colors[eid] in used_c:
                continue
            if prev[i] != 0 and near >> w & 1:
                continue
            break
        else:
            return i
        images[i] = w
        used_v.add(w)
        used_c.add(colors[eid])
    return None


def _check_k2r(G: Graph, r: int) -> None:
    if r < 3:
        raise PreconditionError("r must be at least 3")
    if not is_k2r_free(G, r):
        raise PreconditionError(f"host contains K_(2,{r})")


def k2r_embed(G: Graph, phi: EdgeColoring, T: Tree, ordering: LeafOrdering, v0: int, r: int) -> Embedding:
    """Rainbow copy of ``T`` with x_0 at ``v0`` and N(v0) hit exactly by N(x_0)."""
    k = T.k
    _check_k2r(G, r)
    require_proper(G, phi)
    if G.min_degree() <= 2 * k + r - 3:
        raise PreconditionError(f"host minimum degree {G.min_degree()} is not above 2k + r - 3 = {2 * k + r - 3}")
    if not 0 <= v0 < G.vertex_count or G.degrees[v0] == 0:
        raise PreconditionError(f"start vertex {v0} is isolated or outside the host")
    images = [-1] * (k + 1)
    images[0] = v0
    bad = _k2r_steps(G, phi.colors, ordering.prev, images, k)
    if bad is not None:
        raise violation(f"no admissible neighbor at step {bad}", G, phi, T, ordering, images,
                        [phi.colors[G.edge_id(images[ordering.prev[j]], images[j])] for j in range(1, bad)])
    emb = _finish(G, phi, T, ordering, images)
    x0 = ordering.order[0]
    for i in range(1, k + 1):
        if G.has_edge(v0, images[i]) != (x0 in T.adjacency[ordering.order[i]]):
            raise violation(f"step {i} breaks the adjacency-to-v0 rule", G, phi, T, ordering,
                            images, emb.colors)
    return emb


def _partial_colors(G: Graph, colors, ordering: LeafOrdering, images) -> list[int]:
    out = []
    for i in range(1, len(images)):
        if images[i] < 0:
            break
        out.append(colors[G.edge_id(images[ordering.prev[i]], images[i])])
    return out


def leaf_heavy_threshold(k: int, r: int) -> Fraction:
    return Fraction(3 * k, 4) + Fraction(r - 3, 2)


def embed_many_leaves(G: Graph, phi: EdgeColoring, T: Tree, r: int = 3) -> Embedding:
    """Rainbow copy of a tree with a vertex carrying more than 3k/4 + (r-3)/2 leaves.

    Works inside the dense core returned by ``min_degree_subgraph``; the
    root goes to the smallest core vertex of degree at least k.
    """
    from ..extremal import min_degree_subgraph

    k = T.k
    _check_k2r(G, r)
    require_proper(G, phi)
    counts = leaves_per_vertex(T)
    x0 = max(range(T.vertex_count), key=lambda v: (counts[v], -v))
    ell = counts[x0]
    if ell <= leaf_heavy_threshold(k, r):
        raise PreconditionError(f"best vertex has {ell} leaves, need more than {leaf_heavy_threshold(k, r)}")
    if G.m == 0:
        raise PreconditionError("host has no edges")
    core = min_degree_subgraph(G).graph
    hubs = [v for v in range(core.vertex_count) if core.degrees[v] >= k]
    if not hubs:
        raise PreconditionError(f"dense core has no vertex of degree >= k = {k}")
    v0 = hubs[0]

    own_leaves = {w for w in T.adjacency[x0] if T.degrees[w] == 1}
    rest = [x0]
    seen = {x0}
    for v in rest:                         # breadth-first over T minus own_leaves
        for w in T.adjacency[v]:
            if w not in seen and w not in own_leaves:
                seen.add(w)
                rest.append(w)
    ordering = ordering_from_sequence(T, rest + sorted(own_leaves))
    inner = len(rest) - 1
    if inner and core.min_degree() <= 2 * inner + r - 3:
        raise PreconditionError(f"core minimum degree {core.min_degree()} is not above "
                                f"2k' + r - 3 = {2 * inner + r - 3}")

    core_colors = [phi.colors[G.edge_id(a, b)] for a, b in core.edges]
    images = [-1] * (k + 1)
    images[0] = v0
    bad = _k2r_steps(core, core_colors, ordering.prev, images, inner)
    if bad is not None:
        raise violation(f"inner tree: no admissible neighbor at step {bad}", G, phi, T, ordering,
                        images, _partial_colors(core, core_colors, ordering, images))
    used_v = set(images[:inner + 1])
    used_c = {core_colors[core.edge_id(images[ordering.prev[i]], images[i])] for i in range(1, inner + 1)}
    for i in range(inner + 1, k + 1):
        for w, eid in core.incident[v0]:
            if w not in used_v and core_colors[eid] not in used_c:
                break
        else:
            raise violation(f"leaf {i}: no free neighbor of the root image", G, phi, T, ordering,
                            images, _partial_colors(core, core_colors, ordering, images))
        images[i] = w
        used_v.add(w)
        used_c.add(core_colors[eid])
    return _finish(G, phi, T, ordering, images)

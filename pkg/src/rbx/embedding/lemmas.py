"""Local rainbow-path arguments for triangle-free hosts.

``rainbow_p4_witness`` looks for a rainbow 4-edge path near a path u-v-w
with deg(u) >= 4 and deg(w) >= 3, trying the few path shapes the color
chase around u and w produces before falling back to an exhaustive search
of the ball of radius 2.  ``certify_p3_structure`` checks the shape a
properly colored triangle-free graph must have when it has no rainbow
3-edge path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..colorings import EdgeColoring, dump_coloring, require_proper
from ..errors import InvariantViolation, PreconditionError
from ..graph import Graph, dump_graph, from_edges, is_triangle_free
from ..trees import path_tree, spider_tree
from .search import embeds_uncolored, find_rainbow

FORK = spider_tree([2, 1, 1])


def fork_graph() -> Graph:
    """K_{1,3} with one leg extended by a pendant edge."""
    return from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)])


@dataclass(frozen=True)
class P4Witness:
    path: tuple[int, ...]        # five vertices
    colors: tuple[int, ...]      # four distinct colors along the path
    route: str                   # "chase" or "local-search"


def _rainbow_path(G: Graph, phi: EdgeColoring, path) -> tuple[int, ...] | None:
    if len(set(path)) != len(path):
        return None
    cols = []
    for a, b in zip(path, path[1:]):
        if not G.has_edge(a, b):
            return None
        cols.append(phi.colors[G.edge_id(a, b)])
    return tuple(cols) if len(set(cols)) == len(cols) else None


def _chase_candidates(G: Graph, phi: EdgeColoring, u: int, v: int, w: int):
    """Candidate paths in the order the color argument examines them."""
    col = lambda a, b: phi.colors[G.edge_id(a, b)]
    A, B = col(u, v), col(v, w)
    ys = [y for y in G.neighbors(w) if y != v]
    xs = [x for x in G.neighbors(u) if x != v]
    ys.sort(key=lambda y: (col(w, y) in (A, B), y))
    y1, rest_y = ys[0], ys[1:]
    # a fourth color at u away from y1 closes x-u-v-w-y1
    for x in xs:
        yield (x, u, v, w, y1)
    # otherwise y1 is a common neighbor of u and w; route through it
    for y2 in rest_y:
        for x in xs:
            yield (x, u, y1, w, y2)
            yield (y2, w, v, u, x)
    for x in xs:
        yield (y1, w, v, u, x)


def _ball(G: Graph, sources, radius: int) -> set[int]:
    dist = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        a = queue.popleft()
        if dist[a] == radius:
            continue
        for b in G.neighbors(a):
            if b not in dist:
                dist[b] = dist[a] + 1
                queue.append(b)
    return set(dist)


def rainbow_p4_witness(G: Graph, phi: EdgeColoring, u: int, v: int, w: int) -> P4Witness:
    require_proper(G, phi)
    if len({u, v, w}) != 3 or not (G.has_edge(u, v) and G.has_edge(v, w)):
        raise PreconditionError("u-v-w must be a path in the host")
    if G.degrees[u] < 4 or G.degrees[w] < 3:
        raise PreconditionError(f"need deg(u) >= 4 and deg(w) >= 3, got {G.degrees[u]} and {G.degrees[w]}")
    if not is_triangle_free(G):
        raise PreconditionError("host must be triangle-free")
    for path in _chase_candidates(G, phi, u, v, w):
        cols = _rainbow_path(G, phi, path)
        if cols is not None:
            return P4Witness(tuple(path), cols, "chase")
    ball = _ball(G, [u, v, w], 2)
    local = G.edge_subgraph(G.induced_edge_ids(ball))
    local_phi = EdgeColoring.relabel(phi.colors[G.edge_id(a, b)] for a, b in local.edges)
    res = find_rainbow(local, local_phi, path_tree(4), check_proper=False, prune_palette=False)
    if res.found:
        path = tuple(res.embedding.vertex_map[x] for x in range(5))
        cols = _rainbow_path(G, phi, path)
        if cols is not None:
            return P4Witness(path, cols, "local-search")
    raise InvariantViolation("no rainbow P4 near a 4-3 path",
                             trace=[f"u {u}", f"v {v}", f"w {w}"],
                             inputs={"host": dump_graph(G), "coloring": dump_coloring(phi)})


@dataclass
class P3Certificate:
    fork_free: bool
    hubs_see_leaves: bool            # every vertex of degree >= 3 has only degree-1 neighbors
    one_hub_per_component: bool
    edges: int
    vertices: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.fork_free and self.hubs_see_leaves and self.one_hub_per_component
                and self.edges <= self.vertices)


def _components(G: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in range(G.vertex_count):
        if s in seen:
            continue
        comp, queue = [s], deque([s])
        seen.add(s)
        while queue:
            a = queue.popleft()
            for b in G.neighbors(a):
                if b not in seen:
                    seen.add(b)
                    comp.append(b)
                    queue.append(b)
        out.append(comp)
    return out


def certify_p3_structure(G: Graph, phi: EdgeColoring) -> P3Certificate:
    require_proper(G, phi)
    if not is_triangle_free(G):
        raise PreconditionError("host must be triangle-free")
    if not find_rainbow(G, phi, path_tree(3), check_proper=False).absent:
        raise PreconditionError("coloring contains a rainbow P3")
    violations = []
    fork_free = not embeds_uncolored(G, FORK) if G.m >= 4 else True
    if not fork_free:
        violations.append("host contains a fork")
    deg = G.degrees
    hubs_ok = True
    for x in range(G.vertex_count):
        if deg[x] >= 3:
            for y in G.neighbors(x):
                if deg[y] != 1:
                    hubs_ok = False
                    violations.append(f"vertex {x} of degree {deg[x]} has neighbor {y} of degree {deg[y]}")
    one_ok = True
    for comp in _components(G):
        hubs = [x for x in comp if deg[x] >= 3]
        if len(hubs) > 1:
            one_ok = False
            violations.append(f"component of {min(comp)} has {len(hubs)} vertices of degree >= 3")
    if G.m > G.vertex_count:
        violations.append(f"{G.m} edges exceed {G.vertex_count} vertices")
    return P3Certificate(fork_free, hubs_ok, one_ok, G.m, G.vertex_count, violations)

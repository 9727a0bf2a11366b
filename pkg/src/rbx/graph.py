"""Simple undirected host graphs, hypercube and clique constructions.

Vertices are ``0..vertex_count-1``.  Edges are stored as ``(u, v)`` with
``u < v`` and carry a dense id given by their position in ``Graph.edges``.
A hypercube-tagged graph (``cube_dim`` set) identifies each vertex with an
``cube_dim``-bit integer; the coordinate of edge ``{x, y}`` is the index of
the single set bit of ``x ^ y``.  Edge subgraphs keep the hypercube tag (the
coordinates are still meaningful) and remember the ids of their edges in the
parent graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import LoadError, PreconditionError, ResourceError

MAX_CUBE_DIM = 20
MAX_CLIQUE = 64


@dataclass(frozen=True, eq=False)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    cube_dim: int | None = None
    parent_edge_ids: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.vertex_count < 1:
            raise PreconditionError("a graph needs at least one vertex")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for u, v in edges:
            if not (0 <= u < v < self.vertex_count):
                raise PreconditionError(f"bad edge ({u}, {v}): need 0 <= u < v < {self.vertex_count}")
            if (u, v) in seen:
                raise PreconditionError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if self.cube_dim is not None:
            if self.vertex_count != 1 << self.cube_dim:
                raise PreconditionError("hypercube tag needs vertex_count == 2**dim")
            for u, v in edges:
                if (u ^ v).bit_count() != 1:
                    raise PreconditionError(f"edge ({u}, {v}) is not a hypercube edge")
        if self.parent_edge_ids is not None and len(self.parent_edge_ids) != len(edges):
            raise PreconditionError("parent_edge_ids must match the edge list")

    # -- basic structure -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def incident(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(neighbor, edge_id)`` pairs sorted by neighbor."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for eid, (u, v) in enumerate(self.edges):
            inc[u].append((v, eid))
            inc[v].append((u, eid))
        return tuple(tuple(sorted(row)) for row in inc)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbor sets as integer bitsets."""
        out = [0] * self.vertex_count
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.incident)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(w for w, _ in self.incident[v])

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def edge_id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self._index[(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._index

    @cached_property
    def active_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.vertex_count) if self.degrees[v])

    def min_degree(self) -> int:
        """Minimum degree over non-isolated vertices (0 for an edgeless graph)."""
        degs = [d for d in self.degrees if d]
        return min(degs) if degs else 0

    def max_degree(self) -> int:
        return max(self.degrees)

    def coordinate(self, eid: int) -> int:
        if self.cube_dim is None:
            raise PreconditionError("coordinates exist only on hypercube-tagged graphs")
        u, v = self.edges[eid]
        return (u ^ v).bit_length() - 1

    @cached_property
    def coordinates(self) -> tuple[int, ...]:
        if self.cube_dim is None:
            raise PreconditionError("coordinates exist only on hypercube-tagged graphs")
        return tuple((u ^ v).bit_length() - 1 for u, v in self.edges)

    @property
    def is_hypercube(self) -> bool:
        """True for the full cube Q_n (not a proper edge subgraph of it)."""
        n = self.cube_dim
        return n is not None and self.m == n * (1 << n) // 2

    # -- derived graphs ----------------------------------------------------

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        """The spanning subgraph on the given parent edge ids (sorted)."""
        ids = sorted(set(edge_ids))
        for e in ids:
            if not 0 <= e < self.m:
                raise PreconditionError(f"edge id {e} out of range")
        root_ids = ids if self.parent_edge_ids is None else [self.parent_edge_ids[e] for e in ids]
        return Graph(self.vertex_count, tuple(self.edges[e] for e in ids),
                     cube_dim=self.cube_dim, parent_edge_ids=tuple(root_ids))

    def induced_edge_ids(self, vertices: Iterable[int]) -> list[int]:
        keep = set(vertices)
        return [i for i, (u, v) in enumerate(self.edges) if u in keep and v in keep]

    def materialize(self) -> "Graph":
        """A fresh copy without the parent link (same edges, same order)."""
        return Graph(self.vertex_count, self.edges, cube_dim=self.cube_dim)

    def __repr__(self) -> str:
        tag = f", cube_dim={self.cube_dim}" if self.cube_dim is not None else ""
        return f"Graph(n={self.vertex_count}, m={self.m}{tag})"


@dataclass(frozen=True)
class Matching:
    edge_ids: frozenset[int]
    perfect: bool


def make_matching(G: Graph, edge_ids: Iterable[int]) -> Matching:
    ids = frozenset(edge_ids)
    covered: set[int] = set()
    for e in ids:
        u, v = G.edges[e]
        if u in covered or v in covered:
            raise PreconditionError(f"edges of a matching share a vertex at edge {e}")
        covered.update((u, v))
    return Matching(ids, perfect=len(covered) == G.vertex_count)


# -- constructions ---------------------------------------------------------

def hypercube(n: int) -> Graph:
    if not 1 <= n <= MAX_CUBE_DIM:
        raise ResourceError(f"cube dimension must be in 1..{MAX_CUBE_DIM}, got {n}")
    edges = [(v, v | (1 << i)) for v in range(1 << n) for i in range(n) if not v >> i & 1]
    edges.sort()
    return Graph(1 << n, tuple(edges), cube_dim=n)


def complete_graph(n: int) -> Graph:
    if not 2 <= n <= MAX_CLIQUE:
        raise ResourceError(f"clique size must be in 2..{MAX_CLIQUE}, got {n}")
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def from_edges(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from arbitrary-orientation pairs, normalizing to ``u < v``."""
    return Graph(vertex_count, tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.vertex_count
    return Graph(offset, tuple(edges))


def coordinate_matchings(G: Graph) -> list[Matching]:
    """The n perfect matchings of Q_n, one per coordinate."""
    if not G.is_hypercube:
        raise PreconditionError("coordinate matchings need the full hypercube")
    buckets: list[list[int]] = [[] for _ in range(G.cube_dim)]
    for eid, c in enumerate(G.coordinates):
        buckets[c].append(eid)
    return [make_matching(G, b) for b in buckets]


# -- forbidden subgraphs -----------------------------------------------------

def is_triangle_free(G: Graph) -> bool:
    masks = G.masks
    return not any(masks[u] & masks[v] for u, v in G.edges)


def max_common_neighbors(G: Graph) -> int:
    masks = G.masks
    best = 0
    for u in range(G.vertex_count):
        if not masks[u]:
            continue
        for v in range(u + 1, G.vertex_count):
            c = (masks[u] & masks[v]).bit_count()
            if c > best:
                best = c
    return best


def is_k2r_free(G: Graph, r: int) -> bool:
    """No two vertices share ``r`` or more neighbors."""
    if r < 2:
        raise PreconditionError("K_{2,r} check needs r >= 2")
    return max_common_neighbors(G) < r


def forbidden_subgraph_check(G: Graph, pattern: str, r: int | None = None) -> bool:
    """True when ``G`` avoids the pattern (``"triangle"`` or ``"k2r"`` with ``r``)."""
    if pattern == "triangle":
        return is_triangle_free(G)
    if pattern in ("k2r", "complete_bipartite"):
        if r is None:
            raise PreconditionError("complete_bipartite pattern needs r")
        return is_k2r_free(G, r)
    raise PreconditionError(f"unknown pattern {pattern!r}")


# -- text format -----------------------------------------------------------

def dump_graph(G: Graph) -> str:
    lines = [f"p graph {G.vertex_count} {G.m}"]
    if G.cube_dim is not None:
        lines.append(f"h cube {G.cube_dim}")
    lines.extend(f"e {u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise LoadError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def load_graph(text: str) -> Graph:
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines or lines[0][1][:2] != ["p", "graph"] or len(lines[0][1]) != 4:
        raise LoadError("line 1 must be 'p graph <n_vertices> <n_edges>'")
    n, m = _ints(lines[0][1][2:], lines[0][0])
    dim = None
    edges = []
    for lineno, tok in lines[1:]:
        if tok[0] == "h":
            if tok[1:2] != ["cube"] or len(tok) != 3 or dim is not None:
                raise LoadError(f"line {lineno}: malformed hypercube tag")
            (dim,) = _ints(tok[2:], lineno)
        elif tok[0] == "e":
            if len(tok) != 3:
                raise LoadError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = _ints(tok[1:], lineno)
            if not u < v:
                raise LoadError(f"line {lineno}: edges must be written with u < v")
            edges.append((u, v))
        else:
            raise LoadError(f"line {lineno}: unknown record {tok[0]!r}")
    if len(edges) != m:
        raise LoadError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph(n, tuple(edges), cube_dim=dim)
    except PreconditionError as exc:
        raise LoadError(str(exc)) from None

"""Proper edge colorings: validation, constructions, enumeration.

A coloring is a tuple of dense color ids indexed by edge id.  Properness
is checked against a host graph; it is not part of the value itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import BudgetExceeded, LoadError, PreconditionError, ResourceError
from .graph import Graph, complete_graph

ENUMERATION_EDGE_GUARD = 16


@dataclass(frozen=True)
class EdgeColoring:
    colors: tuple[int, ...]
    palette_size: int = field(init=False)

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        used = set(colors)
        if used != set(range(len(used))):
            raise PreconditionError("color ids must be 0..palette_size-1, each used")
        object.__setattr__(self, "palette_size", len(used))

    @classmethod
    def relabel(cls, raw: Iterable[int]) -> "EdgeColoring":
        """Densify arbitrary color values, keeping their relative order."""
        raw = list(raw)
        rank = {c: i for i, c in enumerate(sorted(set(raw)))}
        return cls(tuple(rank[c] for c in raw))

    @property
    def m(self) -> int:
        return len(self.colors)

    def __getitem__(self, eid: int) -> int:
        return self.colors[eid]

    def restrict(self, edge_ids: Iterable[int]) -> "EdgeColoring":
        """Coloring of an edge subgraph whose edges are ``sorted(edge_ids)``."""
        return EdgeColoring.relabel(self.colors[e] for e in sorted(set(edge_ids)))

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.palette_size)]
        for eid, c in enumerate(self.colors):
            out[c].append(eid)
        return out


def _check_size(G: Graph, phi: EdgeColoring) -> None:
    if phi.m != G.m:
        raise PreconditionError(f"coloring has {phi.m} entries, graph has {G.m} edges")


def improper_vertex(G: Graph, phi: EdgeColoring) -> int | None:
    """First vertex that sees a repeated color, or None."""
    _check_size(G, phi)
    for v, row in enumerate(G.incident):
        seen = set()
        for _, eid in row:
            c = phi.colors[eid]
            if c in seen:
                return v
            seen.add(c)
    return None


def is_proper(G: Graph, phi: EdgeColoring) -> bool:
    return improper_vertex(G, phi) is None


def require_proper(G: Graph, phi: EdgeColoring) -> None:
    v = improper_vertex(G, phi)
    if v is not None:
        raise PreconditionError(f"coloring is not proper at vertex {v}")


# -- constructions -----------------------------------------------------------

def coordinate_coloring(G: Graph) -> EdgeColoring:
    """Color each cube edge by its coordinate (densified on edge subgraphs)."""
    if G.cube_dim is None:
        raise PreconditionError("coordinate coloring needs a hypercube-tagged graph")
    return EdgeColoring.relabel(G.coordinates)


MAX_XOR_P = 5


def xor_coloring(p: int) -> tuple[Graph, EdgeColoring]:
    """K_{2^p} on p-bit labels with ``color(x, y) = (x ^ y) - 1``.

    Every color class is a perfect matching and no Hamiltonian path is
    rainbow (checked exhaustively for small p in the tests).
    """
    if not 2 <= p <= MAX_XOR_P:
        raise ResourceError(f"p must be in 2..{MAX_XOR_P}, got {p}")
    G = complete_graph(1 << p)
    return G, EdgeColoring(tuple((u ^ v) - 1 for u, v in G.edges))


def xor_coloring_union(p: int, copies: int) -> tuple[Graph, EdgeColoring]:
    """Disjoint copies of the XOR-colored clique (host size a multiple of 2^p)."""
    if copies < 1:
        raise PreconditionError("need at least one copy")
    base, phi = xor_coloring(p)
    size = base.vertex_count
    edges = [(u + i * size, v + i * size) for i in range(copies) for u, v in base.edges]
    return Graph(size * copies, tuple(edges)), EdgeColoring(phi.colors * copies)


def random_proper_coloring(G: Graph, seed: int, palette_cap: int | None = None,
                           pick: str = "least") -> EdgeColoring:
    """Greedy proper coloring over a seeded random edge order.

    ``pick="least"`` takes the smallest free color; ``pick="random"`` takes a
    uniformly random free color below ``palette_cap`` (default 2*Delta - 1),
    which gives more varied colorings for randomized trials.
    """
    if G.m == 0:
        return EdgeColoring(())
    delta = G.max_degree()
    if palette_cap is not None and palette_cap < delta + 1:
        raise PreconditionError(f"palette_cap {palette_cap} is below max degree + 1 = {delta + 1}")
    rng = random.Random(seed)
    order = list(range(G.m))
    rng.shuffle(order)
    cap = palette_cap if palette_cap is not None else max(2 * delta - 1, 1)
    colors = [-1] * G.m
    at: list[set[int]] = [set() for _ in range(G.vertex_count)]
    for eid in order:
        u, v = G.edges[eid]
        busy = at[u] | at[v]
        if pick == "least":
            c = 0
            while c in busy:
                c += 1
        elif pick == "random":
            free = [c for c in range(cap) if c not in busy]
            if not free:
                raise PreconditionError(f"greedy coloring ran out of colors at edge {eid} (cap {cap})")
            c = rng.choice(free)
        else:
            raise PreconditionError(f"unknown pick rule {pick!r}")
        if c >= cap:
            raise PreconditionError(f"greedy coloring needs more than {cap} colors (edge {eid})")
        colors[eid] = c
        at[u].add(c)
        at[v].add(c)
    return EdgeColoring.relabel(colors)


# -- exhaustive enumeration -----------------------------------------------------

def enumerate_matching_partitions(G: Graph, budget: int | None = None) -> Iterator[EdgeColoring]:
    """Every partition of E(G) into matchings, once each up to relabeling.

    Edges are processed in id order; each joins an existing compatible class
    or opens the next one (restricted-growth form), so class ``c`` is the one
    whose smallest edge id is the ``c``-th smallest class minimum.  With a
    budget, :class:`BudgetExceeded` is raised once ``budget`` colorings have
    been yielded and more remain.
    """
    m = G.m
    if m > ENUMERATION_EDGE_GUARD and budget is None:
        raise ResourceError(f"{m} edges exceed the enumeration guard ({ENUMERATION_EDGE_GUARD}); pass a budget")
    if m == 0:
        yield EdgeColoring(())
        return
    # conflict[e] = bitmask of earlier edges sharing a vertex with e
    conflict = [0] * m
    for v_row in G.incident:
        ids = [eid for _, eid in v_row]
        for a in ids:
            for b in ids:
                if b < a:
                    conflict[a] |= 1 << b
    colors = [0] * m
    class_mask: list[int] = []
    produced = 0

    def rec(e: int) -> Iterator[EdgeColoring]:
        nonlocal produced
        if e == m:
            if budget is not None and produced >= budget:
                raise BudgetExceeded(f"partition budget of {budget} exhausted", produced=produced)
            produced += 1
            yield EdgeColoring(tuple(colors))
            return
        for c in range(len(class_mask) + 1):
            if c == len(class_mask):
                class_mask.append(1 << e)
                colors[e] = c
                yield from rec(e + 1)
                class_mask.pop()
            elif not class_mask[c] & conflict[e]:
                class_mask[c] |= 1 << e
                colors[e] = c
                yield from rec(e + 1)
                class_mask[c] &= ~(1 << e)

    yield from rec(0)


# -- text format -----------------------------------------------------------

def dump_coloring(phi: EdgeColoring) -> str:
    lines = [f"p coloring {phi.m} {phi.palette_size}"]
    lines.extend(f"c {e} {c}" for e, c in enumerate(phi.colors))
    return "\n".join(lines) + "\n"


def load_coloring(text: str) -> EdgeColoring:
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines or lines[0][1][:2] != ["p", "coloring"] or len(lines[0][1]) != 4:
        raise LoadError("line 1 must be 'p coloring <n_edges> <palette>'")
    try:
        m, palette = int(lines[0][1][2]), int(lines[0][1][3])
    except ValueError:
        raise LoadError("coloring header needs integers") from None
    colors: dict[int, int] = {}
    for lineno, tok in lines[1:]:
        if tok[0] != "c" or len(tok) != 3:
            raise LoadError(f"line {lineno}: expected 'c <edge_id> <color>'")
        try:
            e, c = int(tok[1]), int(tok[2])
        except ValueError:
            raise LoadError(f"line {lineno}: expected integers") from None
        if e in colors or not 0 <= e < m:
            raise LoadError(f"line {lineno}: edge id {e} repeated or out of range")
        colors[e] = c
    if len(colors) != m:
        raise LoadError(f"expected {m} color lines, found {len(colors)}")
    try:
        phi = EdgeColoring(tuple(colors[e] for e in range(m)))
    except PreconditionError as exc:
        raise LoadError(str(exc)) from None
    if phi.palette_size != palette:
        raise LoadError(f"header palette {palette} != {phi.palette_size} colors used")
    return phi

"""Exact rainbow-tree search and the independent embedding validator."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from ..colorings import EdgeColoring, require_proper
from ..graph import Graph
from ..trees import LeafOrdering, Tree, leaf_ordering


@dataclass(frozen=True)
class Embedding:
    """A total embedding of ``tree`` along ``ordering``.

    ``images[i]`` is the host vertex v_i of x_i = ``ordering.order[i]``;
    ``edge_ids[i - 1]`` is the host edge f_i carrying tree edge e_i.
    """
    tree: Tree
    ordering: LeafOrdering
    images: tuple[int, ...]
    edge_ids: tuple[int, ...]
    colors: tuple[int, ...]

    @property
    def vertex_map(self) -> dict[int, int]:
        return dict(zip(self.ordering.order, self.images))

    def trace_lines(self) -> list[str]:
        lines = [f"0 {self.images[0]} -"]
        lines += [f"{i} {self.images[i]} {self.colors[i - 1]}" for i in range(1, len(self.images))]
        return lines


class Status(enum.Enum):
    FOUND = "found"
    ABSENT = "absent"
    BUDGET = "budget"


@dataclass
class SearchResult:
    status: Status
    embedding: Embedding | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    @property
    def absent(self) -> bool:
        return self.status is Status.ABSENT


def _search_root(T: Tree) -> int:
    return max(range(T.vertex_count), key=lambda v: (T.degrees[v], -v))


def find_rainbow(G: Graph, phi: EdgeColoring, T: Tree, budget: int | None = None,
                 *, check_proper: bool = True, prune_palette: bool = True,
                 roots: list[int] | None = None) -> SearchResult:
    """Backtracking search for a rainbow copy of ``T`` in ``(G, phi)``.

    ``ABSENT`` is returned only after the whole space was explored;
    ``BUDGET`` means ``budget`` search nodes were spent first.  With
    ``prune_palette`` a palette smaller than ``k`` answers ``ABSENT`` at once.
    """
    if check_proper:
        require_proper(G, phi)
    k = T.k
    if prune_palette and phi.palette_size < k:
        return SearchResult(Status.ABSENT)
    ordering = leaf_ordering(T, _search_root(T))
    prev = ordering.prev
    colors = phi.colors
    incident = G.incident
    images = [-1] * (k + 1)
    eids = [-1] * k
    used_vertices: set[int] = set()
    used_colors: set[int] = set()
    nodes = 0

    class _Stop(Exception):
        pass

    def rec(i: int) -> bool:
        nonlocal nodes
        if i > k:
            return True
        anchor = images[prev[i]]
        for w, eid in incident[anchor]:
            if w in used_vertices:
                continue
            c = colors[eid]
            if c in used_colors:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise _Stop
            images[i] = w
            eids[i - 1] = eid
            used_vertices.add(w)
            used_colors.add(c)
            if rec(i + 1):
                return True
            used_vertices.discard(w)
            used_colors.discard(c)
        return False

    starts = roots if roots is not None else [v for v in range(G.vertex_count)
                                              if G.degrees[v] >= T.degrees[ordering.order[0]]]
    try:
        for v0 in starts:
            nodes += 1
            images[0] = v0
            used_vertices = {v0}
            used_colors = set()
            if rec(1):
                emb = Embedding(T, ordering, tuple(images), tuple(eids),
                                tuple(colors[e] for e in eids))
                return SearchResult(Status.FOUND, emb, nodes)
    except _Stop:
        return SearchResult(Status.BUDGET, None, nodes)
    return SearchResult(Status.ABSENT, None, nodes)


def embeds_uncolored(G: Graph, T: Tree) -> bool:
    """Whether ``T`` is a subgraph of ``G`` ignoring colors."""
    distinct = EdgeColoring(tuple(range(G.m)))
    return find_rainbow(G, distinct, T, check_proper=False).found


def validate_embedding(G: Graph, phi: EdgeColoring, T: Tree, vertex_map: dict[int, int]) -> list[str]:
    """Problems with a claimed rainbow copy of ``T``; empty when valid.

    Works from the tree's own edge list and the vertex map only, so it does
    not share code paths with any of the embedding procedures.
    """
    problems = []
    if sorted(vertex_map) != list(range(T.vertex_count)):
        problems.append("vertex map does not cover the tree")
        return problems
    images = list(vertex_map.values())
    if len(set(images)) != len(images):
        problems.append("vertex map is not injective")
    seen_colors: dict[int, tuple[int, int]] = {}
    for a, b in T.edges:
        u, v = vertex_map[a], vertex_map[b]
        if not G.has_edge(u, v):
            problems.append(f"tree edge {a}-{b} maps to non-edge {u}-{v}")
            continue
        c = phi.colors[G.edge_id(u, v)]
        if c in seen_colors:
            problems.append(f"color {c} repeated on tree edges {seen_colors[c]} and {(a, b)}")
        seen_colors[c] = (a, b)
    return problems


# -- Hamiltonian paths --------------------------------------------------------

def hamiltonian_paths(G: Graph) -> Iterator[list[int]]:
    """Every Hamiltonian path, each undirected path once (start < end)."""
    n = G.vertex_count
    full = (1 << n) - 1
    masks = G.masks

    def rec(path: list[int], seen: int) -> Iterator[list[int]]:
        if seen == full:
            if path[0] < path[-1]:
                yield list(path)
            return
        avail = masks[path[-1]] & ~seen
        while avail:
            low = avail & -avail
            w = low.bit_length() - 1
            avail ^= low
            path.append(w)
            yield from rec(path, seen | low)
            path.pop()

    for s in range(n):
        yield from rec([s], 1 << s)


def count_rainbow_hamiltonian_paths(G: Graph, phi: EdgeColoring) -> tuple[int, int]:
    """Return ``(paths_checked, rainbow_paths)`` over all Hamiltonian paths."""
    total = rainbow = 0
    for path in hamiltonian_paths(G):
        total += 1
        cols = {phi.colors[G.edge_id(a, b)] for a, b in zip(path, path[1:])}
        if len(cols) == len(path) - 1:
            rainbow += 1
    return total, rainbow

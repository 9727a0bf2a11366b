"""Auxiliary graphs on tree edges and the checks the coordinate embedding needs.

Tree edges are indexed 1..k by a leaf ordering (e_i ends at x_i).  ``h0``
holds the chosen constraint pairs; ``H`` adds every pair of tree edges that
share a vertex.  Pairs are stored as ``(i, j)`` with ``i < j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from ..errors import PreconditionError, ResourceError
from ..trees import LeafOrdering, Tree

CHROMATIC_GUARD = 20


@dataclass(frozen=True)
class AuxGraph:
    tree: Tree
    ordering: LeafOrdering
    h0: frozenset[tuple[int, int]]

    @property
    def k(self) -> int:
        return self.ordering.k

    @cached_property
    def intersecting(self) -> frozenset[tuple[int, int]]:
        k = self.k
        ends = [None] + [set(self.ordering.edge(i)) for i in range(1, k + 1)]
        return frozenset((i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)
                         if ends[i] & ends[j])

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self.h0 | self.intersecting

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Bitmask of H-neighbors per edge index (index 0 unused)."""
        adj = [0] * (self.k + 1)
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    def earlier_h0_degree(self, j: int) -> int:
        return sum(1 for a, b in self.h0 if b == j)

    @cached_property
    def degree_feasible(self) -> bool:
        return all(self.earlier_h0_degree(j) <= self.k - j for j in range(1, self.k + 1))

    @cached_property
    def report(self) -> "HypothesisReport":
        return _check(self)


def _normalize_pairs(pairs: Iterable[tuple[int, int]], k: int) -> frozenset[tuple[int, int]]:
    out = set()
    for i, j in pairs:
        if not (1 <= i <= k and 1 <= j <= k) or i == j:
            raise PreconditionError(f"auxiliary edge ({i}, {j}) is not a pair of distinct indices in 1..{k}")
        out.add((min(i, j), max(i, j)))
    return frozenset(out)


def build_aux_H(T: Tree, ordering: LeafOrdering, h0_edges: Iterable[tuple[int, int]]) -> AuxGraph:
    if ordering.k != T.k:
        raise PreconditionError("ordering and tree sizes differ")
    return AuxGraph(T, ordering, _normalize_pairs(h0_edges, T.k))


def add_edges(H: AuxGraph, pairs: Iterable[tuple[int, int]]) -> AuxGraph:
    return AuxGraph(H.tree, H.ordering, H.h0 | _normalize_pairs(pairs, H.k))


# -- chromatic number ---------------------------------------------------------

def _greedy_clique(adj: list[int], verts: int) -> int:
    best = 0
    rest = verts
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        clique, cand = 1, adj[v] & verts
        while cand:
            w = max((x for x in _bits(cand)), key=lambda x: (adj[x] & cand).bit_count())
            clique += 1
            cand &= adj[w]
        best = max(best, clique)
    return best


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _dsatur_count(adj: list[int], order_vertices: list[int]) -> int:
    color: dict[int, int] = {}
    uncolored = set(order_vertices)
    while uncolored:
        v = max(uncolored, key=lambda x: (len({color[w] for w in _bits(adj[x]) if w in color}),
                                          adj[x].bit_count(), -x))
        taken = {color[w] for w in _bits(adj[v]) if w in color}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
        uncolored.discard(v)
    return max(color.values(), default=-1) + 1


def _colorable(adj: list[int], verts: list[int], c: int) -> bool:
    color: dict[int, int] = {}

    def rec() -> bool:
        if len(color) == len(verts):
            return True
        # most saturated uncolored vertex first
        v = max((x for x in verts if x not in color),
                key=lambda x: (len({color[w] for w in _bits(adj[x]) if w in color}), adj[x].bit_count()))
        taken = {color[w] for w in _bits(adj[v]) if w in color}
        top = max(color.values(), default=-1)
        for col in range(min(c, top + 2)):   # a fresh color only once: symmetry
            if col in taken:
                continue
            color[v] = col
            if rec():
                return True
            del color[v]
        return False

    return rec()


def chromatic_number(n: int, edges: Iterable[tuple[int, int]]) -> int:
    """Exact chromatic number of a graph on ``0..n-1`` (n <= 20)."""
    if n > CHROMATIC_GUARD:
        raise ResourceError(f"chromatic number limited to {CHROMATIC_GUARD} vertices")
    if n == 0:
        return 0
    adj = [0] * n
    for u, v in edges:
        if u != v:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    verts = list(range(n))
    lower = max(1, _greedy_clique(adj, (1 << n) - 1))
    upper = _dsatur_count(adj, verts)
    for c in range(lower, upper):
        if _colorable(adj, verts, c):
            return c
    return upper


# -- hypothesis checks --------------------------------------------------------

@dataclass
class HypothesisReport:
    degree_ok: bool
    chromatic_ok: bool
    violations: list[str] = field(default_factory=list)
    paths_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.chromatic_ok


def even_paths(T: Tree, ordering: LeafOrdering) -> list[tuple[tuple[int, int], list[int]]]:
    """All tree paths with an even number (>= 2) of edges, as edge-index lists."""
    pos = ordering.position
    out = []
    for a in range(T.vertex_count):
        for b in range(a + 1, T.vertex_count):
            verts = T.path_between(a, b)
            if (len(verts) - 1) % 2 or len(verts) < 3:
                continue
            idx = [max(pos[x], pos[y]) for x, y in zip(verts, verts[1:])]
            out.append(((a, b), idx))
    return out


def _check(H: AuxGraph) -> HypothesisReport:
    k = H.k
    violations = []
    degree_ok = True
    for j in range(1, k + 1):
        d = H.earlier_h0_degree(j)
        if d > k - j:
            degree_ok = False
            violations.append(f"degree: e_{j} has {d} earlier H0 neighbors > k - j = {k - j}")
    chromatic_ok = True
    paths = even_paths(H.tree, H.ordering)
    for (a, b), idx in paths:
        ell = len(idx) // 2
        local = {e: n for n, e in enumerate(idx)}
        sub = [(local[i], local[j]) for i, j in H.edges if i in local and j in local]
        chi = chromatic_number(len(idx), sub)
        if chi < ell + 1:
            chromatic_ok = False
            violations.append(f"chromatic: path {a}..{b} on edges {sorted(idx)} has chi {chi} < {ell + 1}")
    return HypothesisReport(degree_ok, chromatic_ok, violations, len(paths))


def check_coordinate_hypotheses(T: Tree, ordering: LeafOrdering, H: AuxGraph) -> HypothesisReport:
    if H.tree != T or H.ordering != ordering:
        raise PreconditionError("auxiliary graph was built for a different tree or ordering")
    return H.report

"""Orderings and constraint graphs H0 for the tree families the coordinate
embedding handles: paths, long pendant paths, trees with many leaves, spiders
with even legs and spiders with legs of length 3.

Every construction only records pairs of tree edges that are disjoint; pairs
that share a vertex are added automatically when H is formed.
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from ..errors import InvariantViolation, PreconditionError
from ..trees import (EVEN_SPIDER, MANY_LEAVES, PENDANT_PATH, THREE_SPIDER, LeafOrdering,
                     SpiderProfile, Tree, dump_tree, ordering_from_sequence, spider_profiles,
                     tree_stats)
from .aux import AuxGraph, build_aux_H

CASES = ("path", "pendant", "leaves", "even_spider", "three_spider")
CASE_TAG = {"path": None, "pendant": PENDANT_PATH, "leaves": MANY_LEAVES,
            "even_spider": EVEN_SPIDER, "three_spider": THREE_SPIDER}


class _H0:
    """Accumulates H0 pairs by tree edge, skipping pairs that intersect."""

    def __init__(self, T: Tree, order: list[int]):
        self.T = T
        self.ordering = ordering_from_sequence(T, order)
        self.pos = self.ordering.position
        self.pairs: set[tuple[int, int]] = set()

    def index(self, a: int, b: int) -> int:
        return max(self.pos[a], self.pos[b])

    def join(self, i: int, j: int) -> None:
        if i == j:
            return
        ei, ej = set(self.ordering.edge(i)), set(self.ordering.edge(j))
        if ei & ej:
            return
        self.pairs.add((min(i, j), max(i, j)))

    def clique(self, indices) -> None:
        indices = list(indices)
        for a in range(len(indices)):
            for b in range(a + 1, len(indices)):
                self.join(indices[a], indices[b])

    def build(self) -> tuple[LeafOrdering, AuxGraph]:
        return self.ordering, build_aux_H(self.T, self.ordering, self.pairs)


def _path_vertices(T: Tree) -> list[int]:
    start = min(T.leaves)
    out, prev = [start], -1
    while True:
        nxt = [w for w in T.adjacency[out[-1]] if w != prev]
        if not nxt:
            return out
        prev = out[-1]
        out.append(nxt[0])


def _path_case(T: Tree) -> tuple[LeafOrdering, AuxGraph]:
    if not T.is_path():
        raise PreconditionError("path construction needs a path")
    k = T.k
    b = _H0(T, _path_vertices(T))
    # e_i joins e_j .. e_{i-2} with j = max(2i - k - 1, 1)
    for i in range(3, k + 1):
        for r in range(max(2 * i - k - 1, 1), i - 1):
            b.join(r, i)
    return b.build()


def _bfs_within(T: Tree, root: int, allowed: set[int]) -> list[int]:
    order, seen = [root], {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in T.adjacency[v]:
            if w in allowed and w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def _pendant_case(T: Tree) -> tuple[LeafOrdering, AuxGraph]:
    k = T.k
    xs = list(tree_stats(T).pendant.vertices)          # x_0 .. x_m
    m = len(xs) - 1
    q = (k + 1) // 2
    if q > m:
        raise PreconditionError("pendant path shorter than floor((k+1)/2)")
    rest = set(range(T.vertex_count)) - set(xs[1:])
    ys = _bfs_within(T, xs[0], rest)[1:]              # leaf ordering of the attached part
    if len(ys) != k - m:
        raise PreconditionError("attached part is not a tree at x_0")
    b = _H0(T, xs[:q + 1] + ys + xs[q + 1:])
    attached = list(range(q + 1, q + 1 + len(ys)))

    def path_index(p: int) -> int:                     # index of path edge x_{p-1} x_p
        return p if p <= q else p + len(ys)

    b.clique(range(1, q + 1))
    for n, e in enumerate(attached):
        for f in attached[:n]:
            b.join(f, e)
        b.join(1, e)
    # tail of the pendant path, completed like a path of length m
    for p in range(q + 1, m + 1):
        for r in range(max(2 * p - m - 1, 1), p - 1):
            b.join(path_index(r), path_index(p))
    return b.build()


def _leaves_case(T: Tree) -> tuple[LeafOrdering, AuxGraph]:
    leaves = set(T.leaves)
    core = set(range(T.vertex_count)) - leaves
    if not core:                                       # single edge
        core = {0}
        leaves = {1}
    root = min(core)
    core_order = _bfs_within(T, root, core)
    pos = {v: i for i, v in enumerate(core_order)}

    def anchor(leaf: int) -> int:
        return next(w for w in T.adjacency[leaf] if w in core)

    leaf_order = sorted(leaves, key=lambda x: (pos[anchor(x)], x))
    b = _H0(T, core_order + leaf_order)
    m = len(core_order) - 1
    b.clique(range(1, m + 1))
    has_leaf = {anchor(x) for x in leaf_order}
    for leaf in leaf_order:
        p = anchor(leaf)
        here = b.index(p, leaf)
        for z in T.adjacency[p]:
            if z not in core:
                continue
            for s in T.adjacency[z]:
                if s in core and s != p and pos[s] > pos[p] and s in has_leaf:
                    b.join(b.index(z, s), here)
    return b.build()


def _pick_profile(T: Tree, ok: Callable[[tuple[int, ...]], bool]) -> SpiderProfile:
    for prof in spider_profiles(T):
        if ok(prof.lengths):
            return prof
    raise PreconditionError("tree is not a spider of the required kind")


def _even_spider_case(T: Tree) -> tuple[LeafOrdering, AuxGraph]:
    prof = _pick_profile(T, lambda ls: all(l % 2 == 0 for l in ls))
    legs = prof.legs
    half = [len(l) // 2 for l in legs]
    order = [prof.root]
    for leg, h in zip(legs, half):
        order += leg[:h]
    for leg, h in zip(legs, half):
        order += leg[h:]
    b = _H0(T, order)

    def arm_edge(s: int, a: int) -> int:               # a-th edge of leg s, a >= 1
        return b.pos[legs[s][a - 1]]

    K = sum(half)
    b.clique(range(1, K + 1))
    for s, h in enumerate(half):
        for a in range(h + 1, 2 * h + 1):
            here = arm_edge(s, a)
            for r in range(2 * a - 2 * h - 1, a - 1):
                b.join(arm_edge(s, r), here)
            for other in range(s + 1, len(legs)):
                for r in range(1, half[other] + 1):
                    b.join(arm_edge(other, r), here)
    return b.build()


def _three_spider_case(T: Tree) -> tuple[LeafOrdering, AuxGraph]:
    prof = _pick_profile(T, lambda ls: all(l == 3 for l in ls))
    legs = prof.legs
    t = len(legs)
    order = [prof.root] + [l[0] for l in legs] + [l[1] for l in legs] + [l[2] for l in reversed(legs)]
    b = _H0(T, order)
    mid = (3 * t + 1) // 2 - t

    # arms are 1-based below; rows sit at positions s, t+s and 3t-s+1
    def row1(s): return s
    def row2(s): return t + s
    def row3(s): return 3 * t - s + 1

    b.clique(range(1, t + mid + 1))
    for s in range(mid + 1, t + 1):
        for r in range(1, t + 1):
            b.join(row1(r), row2(s))
        for r in range(1, t - s + 2):
            b.join(row2(r), row2(s))
        for r in range(t - s + 2, s + 1):
            b.join(row1(r), row3(s))
    return b.build()


_BUILDERS = {"path": _path_case, "pendant": _pendant_case, "leaves": _leaves_case,
             "even_spider": _even_spider_case, "three_spider": _three_spider_case}


def applicable_cases(T: Tree) -> list[str]:
    tags = tree_stats(T).tags
    out = ["path"] if T.is_path() else []
    out += [c for c in CASES[1:] if CASE_TAG[c] in tags]
    return out


def h0_construction(T: Tree, case: str | None = None) -> tuple[LeafOrdering, AuxGraph]:
    """Ordering and H0 for ``case`` (first applicable case when None).

    The result is checked against both hypotheses of the coordinate
    embedding; a failure raises :class:`InvariantViolation`.
    """
    cases = applicable_cases(T)
    if case is None:
        if not cases:
            raise PreconditionError("tree carries no coordinate-embedding case")
        case = cases[0]
    if case not in _BUILDERS:
        raise PreconditionError(f"unknown case {case!r}; expected one of {CASES}")
    if case not in cases:
        raise PreconditionError(f"tree statistics do not support case {case!r}")
    ordering, H = _BUILDERS[case](T)
    report = H.report
    if not report.ok:
        raise InvariantViolation(f"{case} construction fails its hypotheses",
                                 trace=report.violations, inputs={"tree": dump_tree(T)})
    return ordering, H

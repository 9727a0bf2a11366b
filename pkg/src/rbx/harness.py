"""Seeded random instances and trial suites for the embedding lemmas.

Trial ``t`` of a run with seed ``s`` draws everything from
``random.Random(s * 100003 + t)``, so any single trial can be replayed on
its own.  ``RBX_THREADS`` sets the number of worker processes; outcomes are
always returned in trial order.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable

from .colorings import EdgeColoring, random_proper_coloring
from .embedding import (coordinate_embed, find_rainbow, greedy_embed_min_degree, h0_construction,
                        k2r_embed, rainbow_p4_witness, validate_embedding)
from .errors import InvariantViolation
from .extremal import min_degree_subgraph
from .graph import Graph, from_edges, hypercube
from .trees import (MANY_LEAVES, Tree, canonical_form, enumerate_trees, leaf_ordering, path_tree, pendant_tree,
                    spider_tree, tree_stats)

SEED_STRIDE = 100003
CROSS_CHECK_BUDGET = 200_000


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * SEED_STRIDE + trial)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("RBX_THREADS", "1")))
    except ValueError:
        return 1


# -- random hosts ------------------------------------------------------------

@lru_cache(maxsize=None)
def _cube(n: int) -> Graph:
    return hypercube(n)


def random_cube_host(rng: random.Random, n: int, min_deg: int, extra: float | None = None) -> Graph:
    """Subgraph of Q_n with every vertex of degree >= ``min_deg``.

    Takes all edges of a random set of at least ``min_deg`` coordinates,
    adds other cube edges at random, then deletes random edges whose
    endpoints can spare them.
    """
    Q = _cube(n)
    s = rng.randint(min_deg, n)
    coords = set(rng.sample(range(n), s))
    p = rng.random() * 0.5 if extra is None else extra
    keep = [c in coords or rng.random() < p for c in Q.coordinates]
    deg = [0] * Q.vertex_count
    for eid, (u, v) in enumerate(Q.edges):
        if keep[eid]:
            deg[u] += 1
            deg[v] += 1
    for eid in rng.sample(range(Q.m), Q.m // 4):
        u, v = Q.edges[eid]
        if keep[eid] and deg[u] > min_deg and deg[v] > min_deg:
            keep[eid] = False
            deg[u] -= 1
            deg[v] -= 1
    return Q.edge_subgraph(i for i, kept in enumerate(keep) if kept)


def random_dense_host(rng: random.Random, min_deg: int, spare: int = 8) -> Graph:
    """Random graph on min_deg+1 .. min_deg+1+spare vertices with delta >= min_deg."""
    n = rng.randint(min_deg + 1, min_deg + 1 + spare)
    p = rng.random()
    adj = [set() for _ in range(n)]
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            adj[u].add(v)
            adj[v].add(u)
    for u in range(n):
        while len(adj[u]) < min_deg:
            v = rng.choice([w for w in range(n) if w != u and w not in adj[u]])
            adj[u].add(v)
            adj[v].add(u)
    return from_edges(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def random_triangle_free(rng: random.Random) -> Graph:
    """Bipartite, hypercube-subgraph, or random triangle-free-process graph."""
    kind = rng.randrange(3)
    if kind == 0:
        a, b = rng.randint(4, 8), rng.randint(4, 8)
        p = rng.uniform(0.4, 0.9)
        return from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b) if rng.random() < p])
    if kind == 1:
        Q = _cube(rng.randint(4, 5))
        p = rng.uniform(0.6, 1.0)
        return Q.edge_subgraph(e for e in range(Q.m) if rng.random() < p)
    n = rng.randint(8, 16)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    adj = [0] * n
    edges = []
    for u, v in pairs:
        if not adj[u] & adj[v]:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            edges.append((u, v))
    return from_edges(n, edges)


def four_three_paths(G: Graph) -> list[tuple[int, int, int]]:
    deg = G.degrees
    return [(u, v, w) for v in range(G.vertex_count) for u in G.neighbors(v) if deg[u] >= 4
            for w in G.neighbors(v) if w != u and deg[w] >= 3]


def random_small_graph(rng: random.Random, max_vertices: int = 12) -> Graph:
    n = rng.randint(2, max_vertices)
    p = rng.uniform(0.1, 0.8)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    if not edges:
        edges = [(0, 1)]
    return from_edges(n, edges)


# -- random trees per family ------------------------------------------------------

FAMILIES = ("path", "pendant", "leaves", "even_spider", "three_spider")


@lru_cache(maxsize=None)
def _trees(k: int) -> tuple[Tree, ...]:
    return tuple(enumerate_trees(k))


@lru_cache(maxsize=None)
def _many_leaf_trees(k: int) -> tuple[Tree, ...]:
    return tuple(T for T in _trees(k) if MANY_LEAVES in tree_stats(T).tags)


def random_family_tree(rng: random.Random, family: str, max_k: int) -> Tree:
    if family == "path":
        return path_tree(rng.randint(1, max_k))
    if family == "pendant":
        k = rng.randint(3, max_k)        # k >= 3 leaves room for a base tree
        m = rng.randint(-(-(3 * k - 1) // 4), k - 1)
        base = rng.choice(_trees(k - m))
        return pendant_tree(base, m, rng.randrange(base.vertex_count))
    if family == "leaves":
        return rng.choice(_many_leaf_trees(rng.randint(1, min(max_k, 8))))
    if family == "even_spider":
        legs, left = [], rng.randint(1, max_k // 2)
        while left:
            h = rng.randint(1, left)
            legs.append(2 * h)
            left -= h
        return spider_tree(legs)
    if family == "three_spider":
        return spider_tree([3] * rng.randint(1, max(1, max_k // 3)))
    raise ValueError(f"unknown family {family!r}")


def _even_partitions(total: int, largest: int):
    if total == 0:
        yield []
        return
    for part in range(min(total, largest), 0, -2):
        for rest in _even_partitions(total - part, part):
            yield [part] + rest


def family_catalog(max_k: int = 12, leaves_max_k: int = 8, three_spider_max_t: int = 4) -> list[tuple[str, Tree]]:
    """Every tree of each coordinate-embedding family up to the given sizes."""
    out: list[tuple[str, Tree]] = [("path", path_tree(k)) for k in range(1, max_k + 1)]
    seen = set()
    for k in range(3, max_k + 1):
        for m in range(-(-(3 * k - 1) // 4), k):
            for base in _trees(k - m):
                for at in range(base.vertex_count):
                    T = pendant_tree(base, m, at)
                    key = canonical_form(T)
                    if key not in seen:
                        seen.add(key)
                        out.append(("pendant", T))
    for k in range(1, leaves_max_k + 1):
        out.extend(("leaves", T) for T in _many_leaf_trees(k))
    for total in range(2, max_k + 1, 2):
        out.extend(("even_spider", spider_tree(legs)) for legs in _even_partitions(total, total))
    out.extend(("three_spider", spider_tree([3] * t)) for t in range(1, three_spider_max_t + 1))
    return out


@lru_cache(maxsize=None)
def cached_construction(T: Tree, case: str | None):
    return h0_construction(T, case)


# -- trial outcomes -------------------------------------------------------------

@dataclass
class Outcome:
    trial: int
    ok: bool
    detail: str = ""
    counterexample: str | None = None     # dump text of a captured violation


@dataclass
class SuiteReport:
    name: str
    seed: int
    outcomes: list[Outcome] = field(default_factory=list)

    @property
    def failures(self) -> list[Outcome]:
        return [o for o in self.outcomes if not o.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.name, "seed": self.seed, "trials": len(self.outcomes),
                "failures": len(self.failures), "ok": self.ok,
                "outcomes": [{"trial": o.trial, "ok": o.ok, "detail": o.detail} for o in self.outcomes]}


def _guarded(fn: Callable[[random.Random, dict], str], seed: int, trial: int, params: dict) -> Outcome:
    try:
        return Outcome(trial, True, fn(trial_rng(seed, trial), params))
    except InvariantViolation as exc:
        return Outcome(trial, False, str(exc), exc.dump())
    except AssertionError as exc:
        return Outcome(trial, False, f"check failed: {exc}")


def _star(args):
    return _guarded(*args)


def run_trials(name: str, fn: Callable[[random.Random, dict], str], trials: int, seed: int,
               params: dict | None = None) -> SuiteReport:
    params = dict(params or {})
    jobs = [(fn, seed, t, params) for t in range(trials)]
    workers = worker_count()
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_star, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        outcomes = [_star(j) for j in jobs]
    return SuiteReport(name, seed, outcomes)


def _check_valid(G: Graph, phi: EdgeColoring, T: Tree, vmap: dict[int, int]) -> None:
    problems = validate_embedding(G, phi, T, vmap)
    if problems:
        raise InvariantViolation("returned embedding is invalid: " + "; ".join(problems))


def _cross_check(G: Graph, phi: EdgeColoring, T: Tree) -> None:
    res = find_rainbow(G, phi, T, budget=CROSS_CHECK_BUDGET, check_proper=False)
    if res.absent:
        raise InvariantViolation("embedding found but exhaustive search reports none")


# -- trial bodies (module level so worker processes can import them) ----------------

def coordinate_trial(rng: random.Random, params: dict) -> str:
    n = params.get("n") or rng.choice(params.get("dims", (6, 7, 8)))
    T: Tree | None = params.get("tree")
    if T is None:
        T = random_family_tree(rng, params["family"], n)
        case = params["family"]
    else:
        case = None
    ordering, H = cached_construction(T, case)
    G = random_cube_host(rng, n, T.k)
    phi = random_proper_coloring(G, rng.getrandbits(32), pick=rng.choice(("least", "random")))
    v0 = rng.choice(G.active_vertices)
    emb = coordinate_embed(G, phi, T, ordering, H, v0=v0)
    _check_valid(G, phi, T, emb.vertex_map)
    _cross_check(G, phi, T)
    return f"k={T.k} n={n} m={G.m} v0={v0}"


def greedy_trial(rng: random.Random, params: dict) -> str:
    k = params.get("k") or rng.randint(1, params.get("max_k", 5))
    T = params.get("tree") or rng.choice(_trees(k))
    k = T.k
    G = random_dense_host(rng, 2 * k)
    phi = random_proper_coloring(G, rng.getrandbits(32), pick=rng.choice(("least", "random")))
    ordering = leaf_ordering(T, rng.randrange(T.vertex_count))
    start = rng.randrange(G.m)
    emb = greedy_embed_min_degree(G, phi, T, ordering, start)
    _check_valid(G, phi, T, emb.vertex_map)
    _cross_check(G, phi, T)
    return f"k={k} |V|={G.vertex_count} m={G.m}"


def p4_trial(rng: random.Random, params: dict) -> str:
    while True:
        G = random_triangle_free(rng)
        paths = four_three_paths(G)
        if paths:
            break
    u, v, w = rng.choice(paths)
    phi = random_proper_coloring(G, rng.getrandbits(32), pick=rng.choice(("least", "random")))
    wit = rainbow_p4_witness(G, phi, u, v, w)
    _check_valid(G, phi, path_tree(4), dict(enumerate(wit.path)))
    return f"{wit.route} |V|={G.vertex_count} m={G.m}"


def k2r_trial(rng: random.Random, params: dict) -> str:
    n = params.get("n", 8)
    r = params.get("r", 3)
    T = params.get("tree")
    if T is None:
        k = rng.randint(1, (n - r + 2) // 2)
        T = rng.choice(_trees(k))
    k = T.k
    G = random_cube_host(rng, n, 2 * k + r - 2)
    phi = random_proper_coloring(G, rng.getrandbits(32), pick=rng.choice(("least", "random")))
    ordering = leaf_ordering(T, rng.randrange(T.vertex_count))
    v0 = rng.choice(G.active_vertices)
    emb = k2r_embed(G, phi, T, ordering, v0, r)
    _check_valid(G, phi, T, emb.vertex_map)
    return f"k={k} m={G.m} v0={v0}"


def set_condition_violations(G: Graph, vertices) -> list[tuple[int, ...]]:
    """Proper nonempty S of ``vertices`` with e_S <= (d/2)|S|, d from the full host."""
    verts = list(vertices)
    inside = set(verts)
    edges = [(u, v) for u, v in G.edges if u in inside and v in inside]
    bad = []
    for size in range(1, len(verts)):
        for S in combinations(verts, size):
            s = set(S)
            e_s = sum(1 for u, v in edges if u in s or v in s)
            if e_s * G.vertex_count <= G.m * size:
                bad.append(S)
    return bad


def min_degree_trial(rng: random.Random, params: dict) -> str:
    G = random_small_graph(rng, params.get("max_vertices", 12))
    core = min_degree_subgraph(G)
    bad = set_condition_violations(G, core.vertices)
    if bad:
        raise InvariantViolation(f"core keeps violating set {bad[0]}")
    if 2 * core.graph.m * G.vertex_count < 2 * G.m * len(core.vertices):
        raise InvariantViolation("core average degree dropped below d")
    return f"|V|={G.vertex_count} kept={len(core.vertices)}"


SUITES = {
    "coordinate-lemma": coordinate_trial,
    "greedy-2k": greedy_trial,
    "p4-lemma": p4_trial,
    "k2r-embed": k2r_trial,
    "min-degree": min_degree_trial,
}

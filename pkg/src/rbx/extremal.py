"""Rainbow extremal numbers: exact small-host oracles and bound reports.

``ex*(G, T)`` is the largest e(H) over subgraphs H of G that admit a proper
coloring with no rainbow T; ``delta*(G, T)`` maximizes the minimum degree
instead.  The exact oracles sweep edge subsets (one per orbit under the
hypercube's automorphisms when G is a full cube) and, per subset, the
partitions of its edges into matchings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .colorings import EdgeColoring, coordinate_coloring, enumerate_matching_partitions, is_proper
from .embedding.constructions import applicable_cases, h0_construction
from .embedding.search import Status, embeds_uncolored, find_rainbow
from .errors import InvariantViolation, PreconditionError, ResourceError
from .graph import (Graph, Matching, coordinate_matchings, from_edges, is_triangle_free,
                    max_common_neighbors)
from .trees import Tree, describe_tree, leaves_per_vertex

EXACT_EDGE_GUARD = 14
EXHAUSTIVE_VERTEX_GUARD = 14


# -- minimum-degree subgraph -------------------------------------------------

@dataclass(frozen=True)
class CoreResult:
    graph: Graph                  # spanning edge subgraph of the input
    edge_ids: tuple[int, ...]     # its edges, as ids of the input graph
    vertices: tuple[int, ...]     # surviving vertices
    d: Fraction                   # average degree of the input
    mode: str                     # "exhaustive" or "peel-only"


def _edge_counts(masks: list[int], verts: int) -> dict[int, int]:
    """e(X) for every X contained in ``verts``, by adding one vertex at a time."""
    counts = {0: 0}
    members = [v for v in range(len(masks)) if verts >> v & 1]
    for v in members:
        low = 1 << v
        for X in list(counts):
            counts[X | low] = counts[X] + (masks[v] & X).bit_count()
    return counts


def min_degree_subgraph(H: Graph) -> CoreResult:
    """Delete vertex sets S with e_S <= (d/2)|S| until none is left.

    Here e_S counts edges meeting S and d = 2e(H)/v(H) is fixed from the
    input.  Up to 14 vertices every proper subset is examined (smallest S
    first, then lowest bitmask); above that only single vertices are
    peeled and the result is marked ``peel-only``.
    """
    if H.m == 0:
        raise PreconditionError("min-degree subgraph needs at least one edge")
    n, e0 = H.vertex_count, H.m
    d = Fraction(2 * e0, n)

    def violates(e_s: int, size: int) -> bool:        # e_S <= (d/2)|S|
        return e_s * n <= e0 * size

    alive = (1 << n) - 1
    masks = list(H.masks)
    if n <= EXHAUSTIVE_VERTEX_GUARD:
        mode = "exhaustive"
        while True:
            counts = _edge_counts(masks, alive)
            total = counts[alive]
            best = None
            for X, inside in counts.items():            # X = V \ S
                if X == alive or X == 0:     # S must be proper and nonempty
                    continue
                S = alive & ~X
                size = S.bit_count()
                if violates(total - inside, size):
                    key = (size, S)
                    if best is None or key < best:
                        best = key
            if best is None:
                break
            alive &= ~best[1]
    else:
        mode = "peel-only"
        deg = list(H.degrees)
        queue = [v for v in range(n) if violates(deg[v], 1)]
        while queue:
            v = queue.pop()
            if not alive >> v & 1 or alive.bit_count() == 1:
                continue
            alive &= ~(1 << v)
            for w in H.neighbors(v):
                if alive >> w & 1:
                    deg[w] -= 1
                    if violates(deg[w], 1):
                        queue.append(w)
    ids = tuple(i for i, (u, v) in enumerate(H.edges) if alive >> u & 1 and alive >> v & 1)
    if not ids:
        raise InvariantViolation("min-degree extraction removed every edge")
    verts = tuple(v for v in range(n) if alive >> v & 1)
    return CoreResult(H.edge_subgraph(ids), ids, verts, d, mode)


# -- certificates and reports ---------------------------------------------------

@dataclass
class Certificate:
    kind: str                                     # "lower" or "upper"
    edges: tuple[tuple[int, int], ...] = ()
    coloring: tuple[int, ...] = ()
    checked: bool = False
    provenance: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "coloring": list(self.coloring),
                "checked": self.checked}


def revalidate_lower(cert: Certificate, vertex_count: int, T: Tree) -> bool:
    """Re-check a lower certificate from scratch: proper and no rainbow T."""
    if cert.kind != "lower":
        return False
    if not cert.edges:
        return True
    H = from_edges(vertex_count, cert.edges)
    order = sorted(range(len(cert.edges)), key=lambda i: tuple(sorted(cert.edges[i])))
    phi = EdgeColoring.relabel(cert.coloring[i] for i in order)
    if not is_proper(H, phi):
        return False
    return find_rainbow(H, phi, T).absent


@dataclass
class BoundReport:
    quantity: str                                 # "ex*" or "delta*"
    host: str
    tree: str
    lower: int
    upper: int
    exact: bool
    certificate: Certificate | None = None
    provenance: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.lower > self.upper:
            raise InvariantViolation(f"{self.quantity} report has lower {self.lower} > upper {self.upper}")
        if self.exact and self.lower != self.upper:
            raise InvariantViolation("exact report with lower != upper")

    def to_json(self) -> dict:
        cert = self.certificate.to_json() if self.certificate else {"edges": [], "coloring": [], "checked": False}
        return {"quantity": self.quantity, "host": self.host, "tree": self.tree,
                "lower": self.lower, "upper": self.upper, "exact": self.exact,
                "certificate": cert, "provenance": list(self.provenance)}


def describe_host(G: Graph) -> str:
    if G.is_hypercube:
        return f"qn:{G.cube_dim}"
    n = G.vertex_count
    if G.m == n * (n - 1) // 2 and n >= 2:
        return f"kn:{n}"
    return f"graph:{n},{G.m}"


def _lower_cert(G: Graph, ids, colors) -> Certificate:
    return Certificate("lower", tuple(G.edges[e] for e in ids), tuple(colors), checked=True)


# -- constructive lower bounds ----------------------------------------------------

def matching_lower_bound(G: Graph, factorization: list[Matching] | None, k: int) -> Certificate:
    """Union of k - 1 disjoint perfect matchings, colored by matching index.

    With only k - 1 colors no k-edge tree can be rainbow, so the certificate
    holds for every k-edge pattern.
    """
    if factorization is None:
        factorization = coordinate_matchings(G)
    if k < 1:
        raise PreconditionError("k must be positive")
    if k - 1 > len(factorization):
        raise PreconditionError(f"need {k - 1} matchings, have {len(factorization)}")
    chosen = factorization[:k - 1]
    seen: set[int] = set()
    for mt in chosen:
        if not mt.perfect:
            raise PreconditionError("matchings must be perfect")
        if seen & mt.edge_ids:
            raise PreconditionError("matchings must be pairwise disjoint")
        seen |= mt.edge_ids
    pairs = sorted((e, idx) for idx, mt in enumerate(chosen) for e in mt.edge_ids)
    return _lower_cert(G, [e for e, _ in pairs], [c for _, c in pairs])


def greedy_matching(G: Graph) -> list[int]:
    used: set[int] = set()
    out = []
    for eid, (u, v) in enumerate(G.edges):
        if u not in used and v not in used:
            used.update((u, v))
            out.append(eid)
    return out


def star_bound_witness(H: Graph, phi: EdgeColoring, k: int) -> tuple[int, ...] | None:
    """First k edges at the first vertex of degree >= k (rainbow under any proper coloring)."""
    for v in range(H.vertex_count):
        if H.degrees[v] >= k:
            ids = tuple(eid for _, eid in H.incident[v][:k])
            if len({phi.colors[e] for e in ids}) != k:
                raise PreconditionError("coloring is not proper")
            return ids
    if 2 * H.m > (k - 1) * H.vertex_count:
        raise InvariantViolation(f"max degree < {k} but e(H) = {H.m} > (k-1)/2 * {H.vertex_count}")
    return None


def _cheap_lower(G: Graph, k: int) -> tuple[int, Certificate]:
    if k == 1 or G.m == 0:
        return 0, Certificate("lower", checked=True)
    if G.is_hypercube:
        cert = matching_lower_bound(G, None, min(k, G.cube_dim + 1))
        return len(cert.edges), cert
    M = greedy_matching(G)
    few = list(range(min(G.m, k - 1)))
    if len(M) >= len(few):
        return len(M), _lower_cert(G, M, [0] * len(M))
    # k - 1 arbitrary edges hold no k-edge tree; color them apart
    return len(few), _lower_cert(G, few, list(range(len(few))))


# -- theorem-dispatch bounds ---------------------------------------------------

def _exstar_upper(G: Graph, T: Tree) -> list[tuple[int, str]]:
    k, n = T.k, G.vertex_count
    out = [((2 * k - 1) * n, "greedy-2k: ex* < (2k-1)|V|")]
    if max(T.degrees) == k:
        out.append(((k - 1) * n // 2, "star: ex* <= (k-1)/2 |V|"))
    tri_free = is_triangle_free(G)
    if T.is_path() and k == 3 and tri_free:
        out.append((n, "P3 in triangle-free host: ex* <= |V|"))
    if T.is_path() and k == 4 and tri_free and max_common_neighbors(G) < 3:
        out.append((3 * n // 2, "P4 in {K3, K2,3}-free host: ex* <= 3/2 |V|"))
    r = max(3, max_common_neighbors(G) + 1)
    ell = max(leaves_per_vertex(T))
    if ell > Fraction(3 * k, 4) + Fraction(r - 3, 2):
        out.append(((k - 1) * n // 2, f"leaf-heavy vertex, K2,{r}-free host: ex* <= (k-1)/2 |V|"))
    return out


def bound_exstar(G: Graph, T: Tree, host: str | None = None) -> BoundReport:
    k = T.k
    lower, cert = _cheap_lower(G, k)
    uppers = _exstar_upper(G, T)
    upper = min(v for v, _ in uppers)
    prov = [f"lower: {len(cert.edges)} edges in {len(set(cert.coloring))} colors"]
    prov += [f"upper {v}: {why}" for v, why in uppers if v == upper]
    return BoundReport("ex*", host or describe_host(G), describe_tree(T), lower, upper,
                       lower == upper, cert, prov)


def bound_deltastar(G: Graph, T: Tree, host: str | None = None) -> BoundReport:
    k = T.k
    if G.is_hypercube and k >= 1:
        cert = matching_lower_bound(G, None, min(k, G.cube_dim + 1))
        lower = min(k - 1, G.cube_dim)
    elif k >= 2 and G.m:
        cert = _lower_cert(G, [0], [0])
        lower = 1
    else:
        cert, lower = Certificate("lower", checked=True), 0
    prov = [f"lower: {lower}-regular union of matchings" if G.is_hypercube else f"lower: {lower}"]
    cases = applicable_cases(T) if k >= 1 else []
    if G.is_hypercube and cases:
        _, H = h0_construction(T, cases[0])
        upper = k - 1
        prov += [f"upper {upper}: coordinate lemma, case {cases[0]}",
                 f"hypotheses checked on {H.report.paths_checked} even paths"]
    elif max(T.degrees) == k:
        upper = k - 1
        prov.append(f"upper {upper}: star, any k edges at a vertex are rainbow")
    else:
        upper = 2 * k - 1
        prov.append(f"upper {upper}: greedy embedding at minimum degree 2k")
    return BoundReport("delta*", host or describe_host(G), describe_tree(T), lower, upper,
                       lower == upper, cert, prov)


# -- exact oracles ---------------------------------------------------------

def cube_edge_automorphisms(G: Graph) -> list[tuple[int, ...]]:
    """Edge permutations induced by x -> pi(x) ^ t on the full cube."""
    n = G.cube_dim
    out = []
    for pi in permutations(range(n)):
        for t in range(1 << n):
            def image(x: int) -> int:
                y = 0
                for b in range(n):
                    if x >> b & 1:
                        y |= 1 << pi[b]
                return y ^ t
            out.append(tuple(G.edge_id(image(u), image(v)) for u, v in G.edges))
    return out


def _orbit_reps(m: int, size: int, autos: list[tuple[int, ...]] | None):
    for combo in combinations(range(m), size):
        mask = sum(1 << e for e in combo)
        if autos:
            canonical = True
            for perm in autos:
                img = 0
                for e in combo:
                    img |= 1 << perm[e]
                if img < mask:
                    canonical = False
                    break
            if not canonical:
                continue
        yield combo


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.spent = 0

    def left(self) -> int | None:
        return None if self.limit is None else max(self.limit - self.spent, 0)


class _Tripped(Exception):
    pass


def _free_coloring(H: Graph, T: Tree, budget: _Budget) -> EdgeColoring | None:
    """A proper coloring of H with no rainbow T, or None if there is none."""
    k = T.k
    if H.m < k or not embeds_uncolored(H, T):
        return next(enumerate_matching_partitions(H, budget=1)) if H.m else EdgeColoring(())
    if H.cube_dim is not None:
        phi = coordinate_coloring(H)
        if phi.palette_size < k:
            return phi
    for phi in enumerate_matching_partitions(H):
        budget.spent += 1
        if phi.palette_size < k:
            return phi
        res = find_rainbow(H, phi, T, budget=budget.left(), check_proper=False)
        budget.spent += res.nodes
        if res.status is Status.BUDGET or (budget.limit is not None and budget.spent > budget.limit):
            raise _Tripped
        if res.absent:
            return phi
    return None


def _guard(G: Graph) -> None:
    if G.m > EXACT_EDGE_GUARD:
        raise ResourceError(f"exact oracles limited to {EXACT_EDGE_GUARD} edges, host has {G.m}")


def _subgraph_cert(G: Graph, combo, phi: EdgeColoring) -> Certificate:
    return _lower_cert(G, combo, phi.colors)


def exstar_exact(G: Graph, T: Tree, budget: int | None = None, host: str | None = None) -> BoundReport:
    """Exact ex*(G, T) by a decreasing sweep over edge-subset sizes.

    ``budget`` caps the total search work (colorings tried plus search
    nodes); if it runs out the report is an interval with ``exact=False``.
    """
    _guard(G)
    autos = cube_edge_automorphisms(G) if G.is_hypercube else None
    spend = _Budget(budget)
    hdesc, tdesc = host or describe_host(G), describe_tree(T)
    reps_checked = 0
    for size in range(G.m, -1, -1):
        try:
            for combo in _orbit_reps(G.m, size, autos):
                reps_checked += 1
                H = G.edge_subgraph(combo)
                phi = _free_coloring(H, T, spend)
                if phi is not None:
                    cert = _subgraph_cert(G, combo, phi)
                    return BoundReport("ex*", hdesc, tdesc, size, size, True, cert,
                                       [f"exhaustive: {reps_checked} subgraph classes, all larger sizes excluded"])
        except _Tripped:
            lower, cert = _cheap_lower(G, T.k)
            return BoundReport("ex*", hdesc, tdesc, min(lower, size), size, False, cert,
                               [f"budget exhausted at size {size}; sizes above {size} excluded"])
    raise InvariantViolation("ex* sweep found no witness, not even the empty graph")


def exstar_direct(G: Graph, T: Tree) -> int:
    """Uncolored extremal number: largest T-free edge subgraph (no symmetry)."""
    _guard(G)
    for size in range(G.m, -1, -1):
        for combo in combinations(range(G.m), size):
            if size < T.k or not embeds_uncolored(G.edge_subgraph(combo), T):
                return size
    return 0


def deltastar_exact(G: Graph, T: Tree, budget: int | None = None, host: str | None = None) -> BoundReport:
    """Exact delta*(G, T): nonempty subgraphs grouped by minimum degree, highest first.

    The minimum degree ignores isolated vertices.  When no nonempty subgraph
    avoids a rainbow T (only when k = 1) the value is reported as 0.
    """
    _guard(G)
    autos = cube_edge_automorphisms(G) if G.is_hypercube else None
    levels: dict[int, list[tuple[int, ...]]] = {}
    for size in range(1, G.m + 1):
        for combo in _orbit_reps(G.m, size, autos):
            levels.setdefault(G.edge_subgraph(combo).min_degree(), []).append(combo)
    spend = _Budget(budget)
    hdesc, tdesc = host or describe_host(G), describe_tree(T)
    reps_checked = 0
    for delta in sorted(levels, reverse=True):
        try:
            # larger subgraphs first inside a level: witnesses tend to be dense
            for combo in sorted(levels[delta], key=lambda c: (-len(c), c)):
                reps_checked += 1
                phi = _free_coloring(G.edge_subgraph(combo), T, spend)
                if phi is not None:
                    cert = _subgraph_cert(G, combo, phi)
                    return BoundReport("delta*", hdesc, tdesc, delta, delta, True, cert,
                                       [f"exhaustive: {reps_checked} subgraph classes, higher levels excluded"])
        except _Tripped:
            lower = bound_deltastar(G, T).lower
            return BoundReport("delta*", hdesc, tdesc, min(lower, delta), delta, False, None,
                               [f"budget exhausted at minimum degree {delta}; higher levels excluded"])
    return BoundReport("delta*", hdesc, tdesc, 0, 0, True, Certificate("lower", checked=True),
                       ["no nonempty subgraph avoids a rainbow copy; reported as 0"])

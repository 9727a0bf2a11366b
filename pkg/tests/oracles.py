"""Independent brute-force oracles (no shared code with the package search routines)."""

import itertools


def proper(G, colors):
    for v in range(G.vertex_count):
        seen = [colors[e] for e, (a, b) in enumerate(G.edges) if v in (a, b)]
        if len(seen) != len(set(seen)):
            return False
    return True


def brute_partitions(G):
    """Proper colorings over m colors, collapsed to first-appearance labels."""
    seen = set()
    for raw in itertools.product(range(G.m), repeat=G.m):
        rank, canon = {}, []
        for c in raw:
            canon.append(rank.setdefault(c, len(rank)))
        canon = tuple(canon)
        if canon not in seen and proper(G, canon):
            seen.add(canon)
    return seen


def brute_rainbow(G, colors, T):
    """Try every injective vertex map of T into G."""
    adj = set(G.edges)
    for images in itertools.permutations(range(G.vertex_count), T.vertex_count):
        cols = []
        for a, b in T.edges:
            u, v = sorted((images[a], images[b]))
            if (u, v) not in adj:
                break
            cols.append(colors[G.edges.index((u, v))])
        else:
            if len(set(cols)) == len(cols):
                return True
    return False


def brute_chromatic(n, edges):
    for c in range(1, n + 1):
        for assign in itertools.product(range(c), repeat=n):
            if all(assign[i] != assign[j] for i, j in edges):
                return c
    return n


def _free_subgraphs(G, T):
    """Edge subsets of G admitting a proper coloring with no rainbow T."""
    for size in range(G.m + 1):
        for combo in itertools.combinations(range(G.m), size):
            H = G.edge_subgraph(combo)
            if any(not brute_rainbow(H, c, T) for c in brute_partitions(H)):
                yield H


def brute_exstar(G, T):
    return max(H.m for H in _free_subgraphs(G, T))


def brute_deltastar(G, T):
    return max((H.min_degree() for H in _free_subgraphs(G, T) if H.m), default=0)

"""Forbidden trees: families, leaf orderings, statistics, enumeration.

A tree on ``k`` edges has vertices ``0..k`` and a parent array rooted at 0
(``parent[0] == -1``).  Paths use the edge-count convention: ``path_tree(3)``
has 4 vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import LoadError, PreconditionError, ResourceError

MAX_ENUM_K = 10

# case tags produced by tree_stats
PENDANT_PATH = "pendant_path"        # pendant path of >= (3k-1)/4 edges
MANY_LEAVES = "many_leaves"          # >= (k-1)/2 leaves
EVEN_SPIDER = "even_spider"          # spider, every leg even
THREE_SPIDER = "three_spider"        # spider, every leg of length 3
LEAF_HEAVY_VERTEX = "leaf_heavy"     # a vertex adjacent to > 3k/4 leaves

MIN_DEGREE_TAGS = (PENDANT_PATH, MANY_LEAVES, EVEN_SPIDER, THREE_SPIDER)


@dataclass(frozen=True)
class Tree:
    parent: tuple[int, ...]

    def __post_init__(self):
        parent = tuple(int(p) for p in self.parent)
        object.__setattr__(self, "parent", parent)
        n = len(parent)
        if n < 1 or parent[0] != -1:
            raise PreconditionError("parent[0] must be -1")
        for i in range(1, n):
            if not 0 <= parent[i] < n or parent[i] == i:
                raise PreconditionError(f"parent[{i}] = {parent[i]} is not a vertex")
        # every vertex must reach the root without revisiting
        state = [0] * n
        state[0] = 2
        for v in range(1, n):
            path = []
            w = v
            while state[w] == 0:
                state[w] = 1
                path.append(w)
                w = parent[w]
            if state[w] == 1:
                raise PreconditionError("parent array contains a cycle")
            for x in path:
                state[x] = 2

    @property
    def k(self) -> int:
        return len(self.parent) - 1

    @property
    def vertex_count(self) -> int:
        return len(self.parent)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.parent[i], i) for i in range(1, len(self.parent)))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.parent]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(row)) for row in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.adjacency)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v, d in enumerate(self.degrees) if d == 1)

    def is_path(self) -> bool:
        return max(self.degrees, default=0) <= 2

    def path_between(self, a: int, b: int) -> list[int]:
        """Vertices of the unique a-b path (including both ends)."""
        prev = {a: a}
        queue = deque([a])
        while queue:
            v = queue.popleft()
            if v == b:
                break
            for w in self.adjacency[v]:
                if w not in prev:
                    prev[w] = v
                    queue.append(w)
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]

    def relabeled(self, perm: Sequence[int]) -> "Tree":
        """The isomorphic tree with vertex ``v`` renamed ``perm[v]``."""
        edges = [(perm[a], perm[b]) for a, b in self.edges]
        return tree_from_edges(len(self.parent), edges)


def tree_from_edges(vertex_count: int, edges: Iterable[tuple[int, int]], root: int = 0) -> Tree:
    """Build a Tree on ``0..vertex_count-1``; vertex labels are kept, rooted at ``root``."""
    if root != 0:
        raise PreconditionError("trees are rooted at vertex 0")
    adj: list[list[int]] = [[] for _ in range(vertex_count)]
    count = 0
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
        count += 1
    if count != vertex_count - 1:
        raise PreconditionError("a tree on n vertices has n-1 edges")
    parent = [-2] * vertex_count
    parent[0] = -1
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if parent[w] == -2:
                parent[w] = v
                queue.append(w)
    if -2 in parent:
        raise PreconditionError("edges do not form a connected tree")
    return Tree(tuple(parent))


# -- families -------------------------------------------------------------

def path_tree(k: int) -> Tree:
    if k < 1:
        raise PreconditionError("a path needs at least one edge")
    return Tree((-1,) + tuple(range(k)))


def star_tree(k: int) -> Tree:
    if k < 1:
        raise PreconditionError("a star needs at least one edge")
    return Tree((-1,) + (0,) * k)


def spider_tree(legs: Sequence[int]) -> Tree:
    """Root 0 with legs of the given lengths, laid out leg after leg."""
    if not legs or any(l < 1 for l in legs):
        raise PreconditionError("a spider needs at least one leg, all of positive length")
    parent = [-1]
    for length in legs:
        prev = 0
        for _ in range(length):
            parent.append(prev)
            prev = len(parent) - 1
    return Tree(tuple(parent))


def pendant_tree(base: Tree, m: int, at: int = 0) -> Tree:
    """``base`` with an ``m``-edge path hanging from vertex ``at``."""
    if m < 1:
        raise PreconditionError("pendant path needs at least one edge")
    if not 0 <= at < base.vertex_count:
        raise PreconditionError(f"attachment vertex {at} not in the base tree")
    parent = list(base.parent)
    prev = at
    for _ in range(m):
        parent.append(prev)
        prev = len(parent) - 1
    return Tree(tuple(parent))


def broom_tree(leaves: int, handle: int) -> Tree:
    """A star with ``leaves`` leaves plus a ``handle``-edge path at its center."""
    base = star_tree(leaves)
    return pendant_tree(base, handle, 0) if handle else base


def tree_family(kind: str, *args) -> Tree:
    if kind == "path":
        return path_tree(*args)
    if kind == "star":
        return star_tree(*args)
    if kind == "spider":
        return spider_tree(*args)
    if kind == "spider3":
        (t,) = args
        return spider_tree([3] * t)
    if kind == "pendant":
        return pendant_tree(*args)
    if kind == "broom":
        return broom_tree(*args)
    raise PreconditionError(f"unknown tree family {kind!r}")


def parse_tree_spec(text: str) -> Tree:
    """CLI tree spec: ``path:3``, ``star:5``, ``spider:2,2,4``, ``spider3:4``,
    ``broom:4,1``, ``pendant:<treefile>,<m>[,<vertex>]``."""
    kind, _, rest = text.partition(":")
    if not rest:
        raise PreconditionError(f"tree spec {text!r} needs the form kind:args")
    try:
        if kind == "pendant":
            parts = rest.split(",")
            with open(parts[0]) as fh:
                base = load_tree(fh.read())
            at = int(parts[2]) if len(parts) > 2 else 0
            return pendant_tree(base, int(parts[1]), at)
        nums = [int(x) for x in rest.split(",")]
    except (ValueError, IndexError, OSError) as exc:
        raise PreconditionError(f"bad tree spec {text!r}: {exc}") from None
    if kind in ("path", "star", "spider3"):
        if len(nums) != 1:
            raise PreconditionError(f"{kind} takes one number")
        return tree_family(kind, nums[0])
    if kind == "spider":
        return spider_tree(nums)
    if kind == "broom":
        if len(nums) != 2:
            raise PreconditionError("broom takes leaves,handle")
        return broom_tree(*nums)
    raise PreconditionError(f"unknown tree family {kind!r}")


# -- orderings --------------------------------------------------------------

@dataclass(frozen=True)
class LeafOrdering:
    """Vertex order x_0..x_k where each x_i (i >= 1) has one earlier neighbor.

    ``order[i]`` is the tree vertex x_i; ``prev[i]`` is i' (position of its
    earlier neighbor), with ``prev[0] == -1``.  Tree edge e_i joins
    ``order[prev[i]]`` and ``order[i]``.
    """
    order: tuple[int, ...]
    prev: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.order) - 1

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def edge(self, i: int) -> tuple[int, int]:
        """Tree vertices of e_i, parent side first (1 <= i <= k)."""
        return self.order[self.prev[i]], self.order[i]


def ordering_from_sequence(T: Tree, order: Sequence[int]) -> LeafOrdering:
    """Validate a vertex sequence as a leaf ordering and derive i'."""
    order = tuple(order)
    if sorted(order) != list(range(T.vertex_count)):
        raise PreconditionError("ordering must be a permutation of the tree's vertices")
    pos = {v: i for i, v in enumerate(order)}
    prev = [-1]
    for i in range(1, len(order)):
        earlier = [pos[w] for w in T.adjacency[order[i]] if pos[w] < i]
        if len(earlier) != 1:
            raise PreconditionError(f"vertex {order[i]} has {len(earlier)} earlier neighbors")
        prev.append(earlier[0])
    return LeafOrdering(order, tuple(prev))


def leaf_ordering(T: Tree, root: int = 0) -> LeafOrdering:
    """Breadth-first order from ``root``, children in ascending label order."""
    if not 0 <= root < T.vertex_count:
        raise PreconditionError(f"root {root} is not a vertex")
    order = [root]
    prev = [-1]
    seen = {root}
    head = 0
    while head < len(order):
        v = order[head]
        for w in T.adjacency[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                prev.append(head)
        head += 1
    return LeafOrdering(tuple(order), tuple(prev))


def is_valid_ordering(T: Tree, ordering: LeafOrdering) -> bool:
    try:
        return ordering_from_sequence(T, ordering.order) == ordering
    except PreconditionError:
        return False


# -- statistics -------------------------------------------------------------

@dataclass(frozen=True)
class SpiderProfile:
    root: int
    legs: tuple[tuple[int, ...], ...]   # each leg lists its vertices outward from the root

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(l) for l in self.legs)


@dataclass(frozen=True)
class PendantPath:
    vertices: tuple[int, ...]            # x_0 .. x_m, x_m a leaf

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class TreeStats:
    k: int
    leaf_count: int
    pendant: PendantPath
    spider: SpiderProfile | None
    leaf_heavy_vertex: int               # vertex adjacent to the most leaves
    leaf_heavy_count: int                # that number (the paper's l)
    tags: frozenset[str]

    @property
    def max_pendant_path_length(self) -> int:
        return self.pendant.length


def longest_pendant_path(T: Tree) -> PendantPath:
    """Longest path x_0..x_m with x_m a leaf and x_1..x_{m-1} of degree 2."""
    best: tuple[int, ...] | None = None
    for leaf in T.leaves:
        walk = [leaf]
        prev, cur = -1, leaf
        while True:
            nxt = [w for w in T.adjacency[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            walk.append(cur)
            if T.degrees[cur] != 2:
                break
        if best is None or len(walk) > len(best):
            best = tuple(walk)
    assert best is not None
    return PendantPath(best[::-1])


def _legs_from(T: Tree, root: int) -> tuple[tuple[int, ...], ...]:
    legs = []
    for first in T.adjacency[root]:
        leg = [first]
        prev = root
        while True:
            nxt = [w for w in T.adjacency[leg[-1]] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise PreconditionError("not a spider from this root")
            prev = leg[-1]
            leg.append(nxt[0])
        legs.append(tuple(leg))
    return tuple(legs)


def spider_profiles(T: Tree) -> list[SpiderProfile]:
    """Every way to read T as a spider: one root if some vertex has degree
    >= 3, otherwise (T a path) every vertex as root."""
    big = [v for v, d in enumerate(T.degrees) if d >= 3]
    if len(big) > 1:
        return []
    roots = big if big else list(range(T.vertex_count))
    return [SpiderProfile(r, _legs_from(T, r)) for r in roots]


def leaves_per_vertex(T: Tree) -> list[int]:
    counts = [0] * T.vertex_count
    for leaf in T.leaves:
        for w in T.adjacency[leaf]:
            counts[w] += 1
    return counts


def tree_stats(T: Tree) -> TreeStats:
    k = T.k
    if k < 1:
        raise PreconditionError("tree statistics need k >= 1")
    pendant = longest_pendant_path(T)
    profiles = spider_profiles(T)
    counts = leaves_per_vertex(T)
    heavy = max(range(T.vertex_count), key=lambda v: (counts[v], -v))
    tags = set()
    if pendant.length >= Fraction(3 * k - 1, 4):
        tags.add(PENDANT_PATH)
    if len(T.leaves) >= Fraction(k - 1, 2):
        tags.add(MANY_LEAVES)
    if any(all(l % 2 == 0 for l in p.lengths) for p in profiles):
        tags.add(EVEN_SPIDER)
    if any(all(l == 3 for l in p.lengths) for p in profiles):
        tags.add(THREE_SPIDER)
    if counts[heavy] > Fraction(3 * k, 4):
        tags.add(LEAF_HEAVY_VERTEX)
    canonical_profile = None
    if profiles:
        big = [v for v, d in enumerate(T.degrees) if d >= 3]
        if big:
            canonical_profile = profiles[0]
        else:
            centre = pendant.vertices[len(pendant.vertices) // 2]
            canonical_profile = next(p for p in profiles if p.root == centre)
    return TreeStats(k, len(T.leaves), pendant, canonical_profile, heavy, counts[heavy], frozenset(tags))


# -- canonical forms and enumeration ------------------------------------------

def _rooted_level_sequence(T: Tree, root: int) -> tuple[int, ...]:
    def seq(v: int, parent: int, depth: int) -> tuple[int, ...]:
        kids = sorted((seq(w, v, depth + 1) for w in T.adjacency[v] if w != parent), reverse=True)
        out = (depth,)
        for s in kids:
            out += s
        return out
    return seq(root, -1, 0)


def centroids(T: Tree) -> list[int]:
    n = T.vertex_count
    order = leaf_ordering(T, 0)
    size = [1] * n
    for i in range(len(order.order) - 1, 0, -1):
        size[order.order[order.prev[i]]] += size[order.order[i]]
    parent_of = {order.order[i]: order.order[order.prev[i]] for i in range(1, n)}
    best, out = n, []
    for v in range(n):
        heaviest = n - size[v]
        for w in T.adjacency[v]:
            if parent_of.get(w) == v:
                heaviest = max(heaviest, size[w])
        if heaviest < best:
            best, out = heaviest, [v]
        elif heaviest == best:
            out.append(v)
    return out


def canonical_form(T: Tree) -> tuple[int, ...]:
    """Lexicographically smallest centroid-rooted level sequence."""
    return min(_rooted_level_sequence(T, c) for c in centroids(T))


def tree_from_level_sequence(levels: Sequence[int]) -> Tree:
    parent = [-1]
    stack = [0]
    for i in range(1, len(levels)):
        while len(stack) > levels[i]:
            stack.pop()
        parent.append(stack[-1])
        stack.append(i)
    return Tree(tuple(parent))


def enumerate_trees(k: int) -> list[Tree]:
    """One tree per isomorphism class on ``k`` edges, sorted by canonical form."""
    if not 0 <= k <= MAX_ENUM_K:
        raise ResourceError(f"tree enumeration supports k in 0..{MAX_ENUM_K}")
    forms = {(0,)}
    for _ in range(k):
        grown = set()
        for form in forms:
            T = tree_from_level_sequence(form)
            for v in range(T.vertex_count):
                grown.add(canonical_form(Tree(T.parent + (v,))))
        forms = grown
    return [tree_from_level_sequence(f) for f in sorted(forms)]


# -- text format -----------------------------------------------------------

def dump_tree(T: Tree) -> str:
    return "t " + " ".join([str(T.k)] + [str(p) for p in T.parent[1:]]) + "\n"


def load_tree(text: str) -> Tree:
    tok = text.split()
    if not tok or tok[0] != "t":
        raise LoadError("tree line must start with 't'")
    try:
        nums = [int(x) for x in tok[1:]]
    except ValueError:
        raise LoadError("tree record needs integers") from None
    if not nums or len(nums) != nums[0] + 1:
        raise LoadError("tree record must be 't <k> <parent_1> ... <parent_k>'")
    try:
        return Tree((-1,) + tuple(nums[1:]))
    except PreconditionError as exc:
        raise LoadError(str(exc)) from None


def describe_tree(T: Tree) -> str:
    """Short human name: path:k, star:k, spider:a,b,... or a parent array."""
    k = T.k
    if T.is_path():
        return f"path:{k}"
    if max(T.degrees) == k:
        return f"star:{k}"
    profiles = spider_profiles(T)
    if profiles:
        return "spider:" + ",".join(str(l) for l in sorted(profiles[0].lengths, reverse=True))
    return "tree:" + ",".join(str(p) for p in T.parent[1:])

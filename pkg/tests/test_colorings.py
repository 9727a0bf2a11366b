import pytest
from hypothesis import given, strategies as st

from rbx.colorings import (EdgeColoring, coordinate_coloring, dump_coloring, enumerate_matching_partitions,
                           improper_vertex, is_proper, load_coloring, random_proper_coloring, require_proper,
                           xor_coloring, xor_coloring_union)
from rbx.errors import BudgetExceeded, LoadError, PreconditionError, ResourceError
from rbx.graph import complete_graph, from_edges, hypercube
from oracles import brute_partitions
from strategies import graphs


def cyclic_q2(colors_in_cycle_order):
    # Q2 cycle 0-1-3-2-0 visits the stored edges in the order 0, 2, 3, 1
    Q = hypercube(2)
    cyc = [(0, 1), (1, 3), (2, 3), (0, 2)]
    colors = [0] * 4
    for (u, v), c in zip(cyc, colors_in_cycle_order):
        colors[Q.edge_id(u, v)] = c
    return Q, EdgeColoring(tuple(colors))


def test_q2_alternating_is_proper():
    Q, phi = cyclic_q2((0, 1, 0, 1))
    assert is_proper(Q, phi)
    assert phi.colors == (0, 1, 1, 0)


def test_monochromatic_q2_is_improper():
    Q = hypercube(2)
    phi = EdgeColoring((0, 0, 0, 0))
    assert not is_proper(Q, phi)
    assert improper_vertex(Q, phi) == 0
    with pytest.raises(PreconditionError):
        require_proper(Q, phi)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_coordinate_coloring_classes_are_perfect_matchings(n):
    Q = hypercube(n)
    phi = coordinate_coloring(Q)
    assert phi.palette_size == n and is_proper(Q, phi)
    for cls in phi.classes():
        covered = {x for e in cls for x in Q.edges[e]}
        assert len(cls) == 2 ** (n - 1) and len(covered) == 2 ** n


def test_coordinate_coloring_on_two_matchings_of_q4():
    Q = hypercube(4)
    ids = [e for e, c in enumerate(Q.coordinates) if c in (0, 1)]
    H = Q.edge_subgraph(ids)
    phi = coordinate_coloring(H)
    assert phi.palette_size == 2 and is_proper(H, phi)
    assert set(H.degrees) == {2} and H.m == 16       # disjoint 4-cycles covering all 16 vertices


def test_coordinate_coloring_needs_cube_tag():
    with pytest.raises(PreconditionError):
        coordinate_coloring(complete_graph(3))


@pytest.mark.parametrize("p", [2, 3, 4])
def test_xor_coloring_classes(p):
    G, phi = xor_coloring(p)
    assert G.vertex_count == 2 ** p and phi.palette_size == 2 ** p - 1
    assert is_proper(G, phi)
    assert all(len(c) == 2 ** (p - 1) for c in phi.classes())


def test_xor_range_and_union():
    with pytest.raises(ResourceError):
        xor_coloring(1)
    G, phi = xor_coloring_union(2, 3)
    assert G.vertex_count == 12 and G.m == 18 and is_proper(G, phi)


@pytest.mark.parametrize("edges,count", [
    ([(0, 1)], 1),
    ([(0, 1), (1, 2)], 1),
    ([(0, 1), (2, 3)], 2),
])
def test_small_partition_counts(edges, count):
    G = from_edges(4, edges)
    assert len(list(enumerate_matching_partitions(G))) == count


def test_q2_partition_count_matches_brute_force():
    parts = {p.colors for p in enumerate_matching_partitions(hypercube(2))}
    assert parts == brute_partitions(hypercube(2))
    assert len(parts) == 4


@given(graphs(max_vertices=5, max_edges=6))
def test_partitions_match_brute_force(G):
    ours = [p.colors for p in enumerate_matching_partitions(G)]
    assert len(ours) == len(set(ours))
    assert set(ours) == brute_partitions(G)


def test_partition_budget_and_guard():
    Q3 = hypercube(3)
    got = []
    with pytest.raises(BudgetExceeded) as info:
        for phi in enumerate_matching_partitions(Q3, budget=10):
            got.append(phi)
    assert len(got) == 10 and info.value.produced == 10
    assert len(list(enumerate_matching_partitions(hypercube(2), budget=4))) == 4
    with pytest.raises(ResourceError):
        next(enumerate_matching_partitions(hypercube(4)))


def test_random_coloring_deterministic_and_bounded():
    Q3 = hypercube(3)
    a = random_proper_coloring(Q3, 1)
    assert a == random_proper_coloring(Q3, 1)
    assert is_proper(Q3, a) and a.palette_size <= 5


def test_star_needs_all_colors():
    star = from_edges(6, [(0, i) for i in range(1, 6)])
    assert random_proper_coloring(star, 3).palette_size == 5


def test_palette_cap_infeasible():
    with pytest.raises(PreconditionError):
        random_proper_coloring(complete_graph(5), 0, palette_cap=4)


@given(graphs(max_vertices=9), st.integers(0, 10**6), st.sampled_from(["least", "random"]))
def test_random_coloring_always_proper(G, seed, pick):
    phi = random_proper_coloring(G, seed, pick=pick)
    assert is_proper(G, phi)
    assert phi.palette_size <= max(2 * G.max_degree() - 1, 1)


@given(graphs(max_vertices=7), st.integers(0, 1000))
def test_coloring_roundtrip(G, seed):
    phi = random_proper_coloring(G, seed)
    assert load_coloring(dump_coloring(phi)) == phi


@pytest.mark.parametrize("text", ["", "p coloring 2\n", "p coloring 2 1\nc 0 0\n", "p coloring 1 1\nc 0 x\n",
                                  "p coloring 2 2\nc 0 0\nc 1 0\n"])
def test_load_coloring_rejects(text):
    with pytest.raises(LoadError):
        load_coloring(text)


def test_relabel_and_restrict():
    phi = EdgeColoring.relabel([7, 3, 7, 9])
    assert phi.colors == (1, 0, 1, 2)
    assert phi.restrict([3, 0]).colors == (0, 1)
    with pytest.raises(PreconditionError):
        EdgeColoring((0, 2))

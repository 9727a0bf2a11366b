import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from rbx.colorings import EdgeColoring, coordinate_coloring, enumerate_matching_partitions, random_proper_coloring
from rbx.embedding import (add_edges, build_aux_H, certify_p3_structure, check_coordinate_hypotheses,
                           chromatic_number, coordinate_embed, embed_many_leaves, even_paths, find_rainbow,
                           fork_graph, format_trace, greedy_embed_min_degree, h0_construction, hamiltonian_paths,
                           k2r_embed, leaf_heavy_threshold, parse_trace, rainbow_p4_witness, validate_embedding)
from rbx.embedding.trace import violation
from rbx.errors import InvariantViolation, LoadError, PreconditionError
from rbx.graph import complete_graph, from_edges, hypercube
from rbx.harness import random_cube_host, random_dense_host
from rbx.trees import (broom_tree, leaf_ordering, path_tree, spider_tree, star_tree)
from oracles import brute_chromatic, brute_rainbow
from strategies import graphs, trees


# -- find_rainbow ------------------------------------------------------------------

def test_alternating_q2_has_no_rainbow_p3():
    Q = hypercube(2)
    assert find_rainbow(Q, EdgeColoring((0, 1, 1, 0)), path_tree(3)).absent


def test_q3_coordinate_coloring_no_rainbow_p4():
    Q = hypercube(3)
    phi = coordinate_coloring(Q)
    assert find_rainbow(Q, phi, path_tree(4)).absent
    assert find_rainbow(Q, phi, path_tree(4), prune_palette=False).absent


def test_q4_coordinate_rainbow_p4_witness():
    Q = hypercube(4)
    phi = coordinate_coloring(Q)
    res = find_rainbow(Q, phi, path_tree(4))
    assert res.found
    assert not validate_embedding(Q, phi, path_tree(4), res.embedding.vertex_map)
    witness = {0: 0b0000, 1: 0b0001, 2: 0b0011, 3: 0b0111, 4: 0b1111}
    assert not validate_embedding(Q, phi, path_tree(4), witness)


def test_find_rainbow_rejects_improper():
    with pytest.raises(PreconditionError):
        find_rainbow(hypercube(2), EdgeColoring((0, 0, 0, 0)), path_tree(2))


def test_find_rainbow_budget():
    Q = hypercube(4)
    phi = coordinate_coloring(Q)
    res = find_rainbow(Q, phi, path_tree(5), budget=3, prune_palette=False)
    assert res.status.value == "budget"


@settings(max_examples=80)
@given(graphs(max_vertices=6), trees(max_k=4), st.integers(0, 10**6))
def test_find_rainbow_matches_brute_force(G, T, seed):
    phi = random_proper_coloring(G, seed, pick="random")
    res = find_rainbow(G, phi, T)
    assert res.found == brute_rainbow(G, phi.colors, T)
    if res.found:
        assert not validate_embedding(G, phi, T, res.embedding.vertex_map)


def test_validator_catches_problems():
    Q = hypercube(2)
    phi = EdgeColoring((0, 1, 1, 0))
    T = path_tree(2)
    assert validate_embedding(Q, phi, path_tree(3), {0: 0, 1: 1, 2: 3, 3: 2})   # colors 0, 1, 0
    assert validate_embedding(Q, phi, T, {0: 0, 1: 3, 2: 1})
    assert validate_embedding(Q, phi, T, {0: 0, 1: 1, 2: 0})
    assert validate_embedding(Q, phi, T, {0: 0, 1: 1})
    assert not validate_embedding(Q, phi, T, {0: 1, 1: 0, 2: 2})


def test_hamiltonian_path_counts():
    assert sum(1 for _ in hamiltonian_paths(complete_graph(4))) == 12
    assert sum(1 for _ in hamiltonian_paths(complete_graph(5))) == 60
    assert sum(1 for _ in hamiltonian_paths(hypercube(2))) == 4


# -- auxiliary graph ---------------------------------------------------------------

def test_build_aux_path4():
    T = path_tree(4)
    o = leaf_ordering(T, 0)
    H = build_aux_H(T, o, [(1, 3)])
    assert H.edges == {(1, 2), (2, 3), (3, 4), (1, 3)}
    assert add_edges(H, [(1, 2)]).edges == H.edges
    assert add_edges(H, [(3, 1)]).edges == H.edges


def test_build_aux_star_is_clique():
    T = star_tree(5)
    H = build_aux_H(T, leaf_ordering(T, 0), [])
    assert H.edges == set(itertools.combinations(range(1, 6), 2))
    rep = check_coordinate_hypotheses(T, H.ordering, H)
    assert rep.degree_ok and rep.chromatic_ok


def test_build_aux_rejects_bad_indices():
    T = path_tree(3)
    with pytest.raises(PreconditionError):
        build_aux_H(T, leaf_ordering(T, 0), [(0, 2)])
    with pytest.raises(PreconditionError):
        build_aux_H(T, leaf_ordering(T, 0), [(1, 4)])


def test_empty_h0_on_path4_fails_chromatic_condition():
    T = path_tree(4)
    H = build_aux_H(T, leaf_ordering(T, 0), [])
    rep = check_coordinate_hypotheses(T, H.ordering, H)
    assert rep.degree_ok and not rep.chromatic_ok and rep.violations


def test_hypothesis_check_rejects_foreign_aux():
    T = path_tree(4)
    H = build_aux_H(T, leaf_ordering(T, 0), [])
    with pytest.raises(PreconditionError):
        check_coordinate_hypotheses(path_tree(4), leaf_ordering(T, 4), H)


@given(trees(max_k=8))
def test_even_paths_are_all_even_pairs(T):
    o = leaf_ordering(T, 0)
    got = even_paths(T, o)
    expected = sum(1 for a, b in itertools.combinations(range(T.vertex_count), 2)
                   if (len(T.path_between(a, b)) - 1) % 2 == 0)
    assert len(got) == expected
    for _, idx in got:
        assert len(idx) % 2 == 0 and len(set(idx)) == len(idx)


@pytest.mark.parametrize("n,edges,chi", [
    (3, [(0, 1), (1, 2), (0, 2)], 3),
    (6, [(i, (i + 1) % 6) for i in range(6)], 2),
    (5, [(i, (i + 1) % 5) for i in range(5)], 3),
    (4, [], 1),
    (5, list(itertools.combinations(range(5), 2)), 5),
])
def test_chromatic_examples(n, edges, chi):
    assert chromatic_number(n, edges) == chi


@given(st.integers(1, 7), st.data())
def test_chromatic_matches_brute_force(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    assert chromatic_number(n, edges) == brute_chromatic(n, edges)


def test_chromatic_guard():
    with pytest.raises(Exception):
        chromatic_number(21, [])


# -- constructions -------------------------------------------------------------------

def test_path4_construction():
    o, H = h0_construction(path_tree(4), "path")
    assert H.h0 == {(1, 3)}
    assert H.report.ok


@pytest.mark.parametrize("k", range(1, 13))
def test_path_constructions(k):
    o, H = h0_construction(path_tree(k), "path")
    assert H.report.ok


def test_star_construction_has_empty_h0():
    o, H = h0_construction(star_tree(6), "leaves")
    assert H.h0 == frozenset() and H.report.ok


def test_even_spider_takes_first_halves_first():
    T = spider_tree([2, 2])
    o, H = h0_construction(T, "even_spider")
    assert set(o.order[1:3]) == {1, 3} and set(o.order[3:]) == {2, 4}
    assert H.report.ok


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_three_spider_construction(t):
    o, H = h0_construction(spider_tree([3] * t), "three_spider")
    assert H.report.ok


def test_construction_preconditions():
    with pytest.raises(PreconditionError):
        h0_construction(spider_tree([5, 5, 5]))
    with pytest.raises(PreconditionError):
        h0_construction(star_tree(4), "even_spider")
    with pytest.raises(PreconditionError):
        h0_construction(star_tree(4), "zigzag")


# -- coordinate embedding ------------------------------------------------------------

def test_coordinate_embed_path3_on_q3():
    Q = hypercube(3)
    phi = coordinate_coloring(Q)
    T = path_tree(3)
    o, H = h0_construction(T, "path")
    emb = coordinate_embed(Q, phi, T, o, H)
    assert not validate_embedding(Q, phi, T, emb.vertex_map)
    assert len(set(emb.colors)) == 3


@pytest.mark.parametrize("n,k", [(4, 3), (5, 5), (6, 4)])
def test_coordinate_embed_star_on_matching_union(n, k):
    Q = hypercube(n)
    G = Q.edge_subgraph([e for e, c in enumerate(Q.coordinates) if c < k])
    phi = coordinate_coloring(G)
    T = star_tree(k)
    o, H = h0_construction(T, "leaves")
    emb = coordinate_embed(G, phi, T, o, H)
    assert len({G.coordinates[e] for e in emb.edge_ids}) == k


def test_coordinate_embed_preconditions():
    Q = hypercube(3)
    phi = coordinate_coloring(Q)
    T = path_tree(4)
    o, H = h0_construction(T, "path")
    with pytest.raises(PreconditionError):
        coordinate_embed(Q, phi, T, o, H)                       # delta = 3 < 4
    bad = build_aux_H(T, leaf_ordering(T, 0), [])
    Q4 = hypercube(4)
    with pytest.raises(PreconditionError):
        coordinate_embed(Q4, coordinate_coloring(Q4), T, bad.ordering, bad)
    with pytest.raises(PreconditionError):
        coordinate_embed(complete_graph(5), EdgeColoring(tuple(range(10))), T, o, H)


@settings(max_examples=50)
@given(st.sampled_from(["path", "pendant", "leaves", "even_spider", "three_spider"]),
       st.integers(0, 10**6), st.sampled_from([5, 6]))
def test_coordinate_embed_random_hosts(family, seed, n):
    from rbx.harness import random_family_tree
    rng = random.Random(seed)
    T = random_family_tree(rng, family, n)
    o, H = h0_construction(T, family)
    G = random_cube_host(rng, n, T.k)
    phi = random_proper_coloring(G, seed, pick="random")
    emb = coordinate_embed(G, phi, T, o, H, v0=rng.choice(G.active_vertices))
    assert not validate_embedding(G, phi, T, emb.vertex_map)
    assert find_rainbow(G, phi, T).found


# -- greedy embeddings ---------------------------------------------------------------

def test_greedy_star2_in_k5_from_every_edge():
    G = complete_graph(5)
    phi = random_proper_coloring(G, 0)
    T = star_tree(2)
    o = leaf_ordering(T, 0)
    for e in range(G.m):
        emb = greedy_embed_min_degree(G, phi, T, o, e)
        assert not validate_embedding(G, phi, T, emb.vertex_map)
    u, v = G.edges[3]
    assert greedy_embed_min_degree(G, phi, T, o, (v, u)).images[:2] == (v, u)


@settings(max_examples=40)
@given(trees(max_k=5), st.integers(0, 10**6))
def test_greedy_min_degree_random(T, seed):
    rng = random.Random(seed)
    G = random_dense_host(rng, 2 * T.k)
    phi = random_proper_coloring(G, seed, pick="random")
    o = leaf_ordering(T, 0)
    emb = greedy_embed_min_degree(G, phi, T, o, rng.randrange(G.m))
    assert not validate_embedding(G, phi, T, emb.vertex_map)


def test_greedy_precondition():
    Q = hypercube(3)
    with pytest.raises(PreconditionError):
        greedy_embed_min_degree(Q, coordinate_coloring(Q), path_tree(2), leaf_ordering(path_tree(2), 0), 0)


def test_k2r_path2_on_q5_from_every_vertex():
    Q = hypercube(5)
    phi = coordinate_coloring(Q)
    T = path_tree(2)
    o = leaf_ordering(T, 0)
    for v0 in range(Q.vertex_count):
        emb = k2r_embed(Q, phi, T, o, v0, 3)
        assert emb.images[0] == v0
        assert not Q.has_edge(v0, emb.images[2])


def test_k2r_star2_leaves_adjacent_to_root():
    Q = hypercube(5)
    phi = random_proper_coloring(Q, 4)
    T = star_tree(2)
    emb = k2r_embed(Q, phi, T, leaf_ordering(T, 0), 7, 3)
    assert all(Q.has_edge(7, w) for w in emb.images[1:])
    assert len(set(emb.colors)) == 2


def test_k2r_preconditions():
    Q = hypercube(4)
    phi = coordinate_coloring(Q)
    T = path_tree(2)
    o = leaf_ordering(T, 0)
    with pytest.raises(PreconditionError):
        k2r_embed(Q, phi, T, o, 0, 3)                 # delta 4 is not above 4
    K = complete_graph(8)
    with pytest.raises(PreconditionError):
        k2r_embed(K, random_proper_coloring(K, 0), T, o, 0, 3)   # K8 contains K_{2,3}


def test_leaf_threshold():
    assert leaf_heavy_threshold(8, 3) == 6
    assert leaf_heavy_threshold(4, 5) == 4


@pytest.mark.parametrize("k", [3, 5, 6])
def test_many_leaves_star(k):
    Q = hypercube(6)
    phi = random_proper_coloring(Q, k)
    emb = embed_many_leaves(Q, phi, star_tree(k))
    assert not validate_embedding(Q, phi, star_tree(k), emb.vertex_map)


def test_many_leaves_broom_on_q6():
    Q = hypercube(6)
    T = broom_tree(5, 1)
    for seed in range(5):
        phi = random_proper_coloring(Q, seed, pick="random")
        emb = embed_many_leaves(Q, phi, T)
        assert not validate_embedding(Q, phi, T, emb.vertex_map)


def test_many_leaves_precondition():
    Q = hypercube(6)
    with pytest.raises(PreconditionError):
        embed_many_leaves(Q, coordinate_coloring(Q), path_tree(4))


# -- local lemmas ------------------------------------------------------------------

def test_p4_witness_on_q4():
    Q = hypercube(4)
    phi = coordinate_coloring(Q)
    wit = rainbow_p4_witness(Q, phi, 0b0000, 0b0001, 0b0011)
    vmap = dict(enumerate(wit.path))
    assert not validate_embedding(Q, phi, path_tree(4), vmap)


def test_p4_witness_preconditions():
    Q = hypercube(3)
    with pytest.raises(PreconditionError):
        rainbow_p4_witness(Q, coordinate_coloring(Q), 0, 1, 3)     # deg(u) = 3
    K = complete_graph(6)
    with pytest.raises(PreconditionError):
        rainbow_p4_witness(K, random_proper_coloring(K, 0), 0, 1, 2)


def test_p3_structure_certificates():
    star = from_edges(4, [(0, 1), (0, 2), (0, 3)])
    cert = certify_p3_structure(star, EdgeColoring((0, 1, 2)))
    assert cert.ok and cert.edges == 3 <= cert.vertices
    cert = certify_p3_structure(hypercube(2), EdgeColoring((0, 1, 1, 0)))
    assert cert.ok and cert.edges == 4 == cert.vertices


def test_fork_always_has_rainbow_p3():
    G = fork_graph()
    parts = list(enumerate_matching_partitions(G))
    assert parts
    for phi in parts:
        assert find_rainbow(G, phi, path_tree(3)).found
        with pytest.raises(PreconditionError):
            certify_p3_structure(G, phi)


# -- traces ------------------------------------------------------------------

def test_trace_roundtrip():
    Q = hypercube(3)
    phi = coordinate_coloring(Q)
    T = path_tree(3)
    o, H = h0_construction(T, "path")
    emb = coordinate_embed(Q, phi, T, o, H)
    text = format_trace(emb.trace_lines(), "q3.graph", "q3.coloring", "p3.tree")
    tr = parse_trace(text)
    assert tr.refs == {"host": "q3.graph", "coloring": "q3.coloring", "tree": "p3.tree"}
    assert [v for _, v, _ in tr.steps] == list(emb.images)
    assert [c for _, _, c in tr.steps[1:]] == list(emb.colors)


@pytest.mark.parametrize("text", ["0 1 2\n", "0 1 -\n2 3 4\n", "0 a -\n", "host\n", "0 1 -\n1 2\n"])
def test_parse_trace_rejects(text):
    with pytest.raises(LoadError):
        parse_trace(text)


def test_violation_carries_inputs(tmp_path):
    Q = hypercube(2)
    phi = EdgeColoring((0, 1, 1, 0))
    T = path_tree(2)
    err = violation("stuck", Q, phi, T, leaf_ordering(T, 0), [0, 1, -1], [0])
    assert isinstance(err, InvariantViolation)
    dump = err.dump()
    assert "p graph 4 4" in dump and "p coloring 4 2" in dump and "0 0 -" in dump
    path = err.save(tmp_path)
    assert path.read_text() == dump and path.name.startswith("counterexample-")
    assert err.save(tmp_path) == path

import pytest
from hypothesis import given, settings, strategies as st

from rbx.colorings import EdgeColoring, random_proper_coloring
from rbx.errors import InvariantViolation, PreconditionError, ResourceError
from rbx.extremal import (BoundReport, Certificate, bound_deltastar, bound_exstar, cube_edge_automorphisms,
                          deltastar_exact, exstar_direct, exstar_exact, matching_lower_bound, min_degree_subgraph,
                          revalidate_lower, star_bound_witness)
from rbx.graph import coordinate_matchings, from_edges, hypercube, make_matching
from rbx.harness import set_condition_violations
from rbx.trees import enumerate_trees, path_tree, spider_tree, star_tree
from oracles import brute_deltastar, brute_exstar
from strategies import graphs, trees


# -- min-degree subgraph ------------------------------------------------------------

def test_triangle_with_pendant():
    G = from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    core = min_degree_subgraph(G)
    assert core.vertices == (0, 1, 2) and core.graph.m == 3 and core.mode == "exhaustive"


@pytest.mark.parametrize("G", [hypercube(3), from_edges(5, [(i, (i + 1) % 5) for i in range(5)]),
                               from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])],
                         ids=["Q3", "C5", "K33"])
def test_regular_graphs_unchanged(G):
    core = min_degree_subgraph(G)
    assert core.graph.m == G.m and len(core.vertices) == G.vertex_count


def test_star_unchanged():
    G = from_edges(6, [(0, i) for i in range(1, 6)])
    core = min_degree_subgraph(G)
    assert core.graph.m == 5 and not set_condition_violations(G, core.vertices)


def test_large_host_peels_only():
    core = min_degree_subgraph(hypercube(5))
    assert core.mode == "peel-only" and core.graph.m == 80


def test_min_degree_needs_edges():
    with pytest.raises(PreconditionError):
        min_degree_subgraph(from_edges(3, []))


@settings(max_examples=80)
@given(graphs(max_vertices=9))
def test_min_degree_output_satisfies_set_condition(G):
    core = min_degree_subgraph(G)
    assert not set_condition_violations(G, core.vertices)
    # average degree never drops below d = 2e/v
    assert core.graph.m * G.vertex_count >= G.m * len(core.vertices)
    assert core.graph.min_degree() * G.vertex_count > G.m   # delta > d/2


# -- exact oracles ---------------------------------------------------------------

def test_exstar_q2_p3():
    rep = exstar_exact(hypercube(2), path_tree(3))
    assert (rep.lower, rep.upper, rep.exact) == (4, 4, True)
    assert len(rep.certificate.edges) == 4 and len(set(rep.certificate.coloring)) == 2
    assert revalidate_lower(rep.certificate, 4, path_tree(3))


@pytest.mark.parametrize("T,value", [(path_tree(2), 2), (star_tree(2), 2), (star_tree(3), 4), (path_tree(1), 0)])
def test_exstar_q2_values(T, value):
    rep = exstar_exact(hypercube(2), T)
    assert rep.exact and rep.lower == value
    assert revalidate_lower(rep.certificate, 4, T)


def test_exstar_single_edge():
    assert exstar_exact(hypercube(1), path_tree(2)).lower == 1


@pytest.mark.parametrize("T,value", [(path_tree(2), 1), (path_tree(3), 2), (star_tree(3), 2), (path_tree(1), 0)])
def test_deltastar_q2_values(T, value):
    rep = deltastar_exact(hypercube(2), T)
    assert rep.exact and rep.lower == value


def test_deltastar_single_edge():
    assert deltastar_exact(hypercube(1), path_tree(2)).lower == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_colored_at_least_uncolored_on_q2(k):
    Q = hypercube(2)
    for T in enumerate_trees(k):
        assert exstar_exact(Q, T).lower >= exstar_direct(Q, T)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_deltastar_q2_at_least_k_minus_one(k):
    for T in enumerate_trees(k):
        assert deltastar_exact(hypercube(2), T).lower >= k - 1


@settings(max_examples=25)
@given(graphs(max_vertices=5, max_edges=5), trees(max_k=3))
def test_exact_oracles_match_brute_force(G, T):
    assert exstar_exact(G, T).lower == brute_exstar(G, T)
    assert deltastar_exact(G, T).lower == brute_deltastar(G, T)


def test_q2_oracles_match_brute_force():
    Q = hypercube(2)
    for k in (2, 3):
        for T in enumerate_trees(k):
            assert exstar_exact(Q, T).lower == brute_exstar(Q, T)
            assert deltastar_exact(Q, T).lower == brute_deltastar(Q, T)


def test_budget_gives_interval():
    rep = exstar_exact(hypercube(3), path_tree(3), budget=5)
    assert not rep.exact and rep.lower <= rep.upper
    rep = deltastar_exact(hypercube(3), path_tree(3), budget=5)
    assert not rep.exact and rep.lower <= rep.upper


def test_exact_guard():
    with pytest.raises(ResourceError):
        exstar_exact(hypercube(4), path_tree(3))
    with pytest.raises(ResourceError):
        deltastar_exact(hypercube(4), path_tree(3))


def test_q3_automorphisms():
    autos = cube_edge_automorphisms(hypercube(3))
    assert len(set(autos)) == 48
    assert tuple(range(12)) in autos


# -- lower bounds ---------------------------------------------------------------

def test_matching_lower_bound_q3():
    Q = hypercube(3)
    cert = matching_lower_bound(Q, None, 3)
    assert len(cert.edges) == 8 and len(set(cert.coloring)) == 2
    H = from_edges(8, cert.edges)
    assert H.min_degree() == 2
    for T in enumerate_trees(3):
        assert revalidate_lower(cert, 8, T)


@pytest.mark.parametrize("n,k,edges", [(4, 4, 24), (2, 2, 2), (3, 1, 0)])
def test_matching_lower_bound_sizes(n, k, edges):
    assert len(matching_lower_bound(hypercube(n), None, k).edges) == edges


def test_matching_lower_bound_errors():
    Q = hypercube(3)
    ms = coordinate_matchings(Q)
    with pytest.raises(PreconditionError):
        matching_lower_bound(Q, [ms[0], ms[0]], 3)
    with pytest.raises(PreconditionError):
        matching_lower_bound(Q, [make_matching(Q, [0])], 2)
    with pytest.raises(PreconditionError):
        matching_lower_bound(Q, ms, 5)


def test_star_witness():
    star = from_edges(6, [(0, i) for i in range(1, 6)])
    assert star_bound_witness(star, EdgeColoring(tuple(range(5))), 5) == (0, 1, 2, 3, 4)
    pm = from_edges(4, [(0, 1), (2, 3)])
    assert star_bound_witness(pm, EdgeColoring((0, 0)), 2) is None


@given(graphs(max_vertices=8), st.integers(1, 6), st.integers(0, 1000))
def test_star_witness_whenever_dense(G, k, seed):
    phi = random_proper_coloring(G, seed)
    wit = star_bound_witness(G, phi, k)
    if 2 * G.m > (k - 1) * G.vertex_count:
        assert wit is not None
    if wit is not None:
        assert len({phi.colors[e] for e in wit}) == k


# -- bound reports -------------------------------------------------------------

@pytest.mark.parametrize("T,lo,hi", [
    (path_tree(3), 8, 8),
    (path_tree(4), 12, 12),
    (star_tree(3), 8, 8),
    (spider_tree([2, 2]), 12, 12),
    (spider_tree([2, 1, 1]), 12, 56),
])
def test_bound_exstar_q3(T, lo, hi):
    rep = bound_exstar(hypercube(3), T)
    assert (rep.lower, rep.upper) == (lo, hi)
    assert rep.exact == (lo == hi)
    assert rep.provenance


@pytest.mark.parametrize("n,T,lo,hi", [
    (5, path_tree(4), 3, 3),
    (5, spider_tree([2, 2]), 3, 3),
    (6, spider_tree([2, 4]), 5, 5),
    (5, spider_tree([5, 5, 5]), 5, 29),
    (10, spider_tree([5, 5]), 9, 9),
    (4, star_tree(3), 2, 2),
])
def test_bound_deltastar_cubes(n, T, lo, hi):
    rep = bound_deltastar(hypercube(n), T)
    assert (rep.lower, rep.upper) == (lo, hi)


def test_bound_deltastar_records_case():
    rep = bound_deltastar(hypercube(6), spider_tree([2, 4]))
    assert any("coordinate lemma" in p for p in rep.provenance)


@settings(max_examples=40)
@given(graphs(max_vertices=7), trees(max_k=4))
def test_bound_reports_consistent(G, T):
    for rep in (bound_exstar(G, T), bound_deltastar(G, T)):
        assert rep.lower <= rep.upper
        if rep.certificate is not None and rep.certificate.edges:
            assert revalidate_lower(rep.certificate, G.vertex_count, T)


@settings(max_examples=15)
@given(graphs(max_vertices=6, max_edges=8), trees(max_k=3))
def test_bounds_bracket_exact(G, T):
    ex = exstar_exact(G, T).lower
    b = bound_exstar(G, T)
    assert b.lower <= ex <= b.upper
    ds = deltastar_exact(G, T).lower
    d = bound_deltastar(G, T)
    assert d.lower <= ds <= d.upper


def test_report_invariants():
    with pytest.raises(InvariantViolation):
        BoundReport("ex*", "qn:2", "path:3", 5, 4, False)
    with pytest.raises(InvariantViolation):
        BoundReport("ex*", "qn:2", "path:3", 3, 4, True)


def test_report_json_keys():
    js = exstar_exact(hypercube(2), path_tree(3), host="qn:2").to_json()
    assert list(js) == ["quantity", "host", "tree", "lower", "upper", "exact", "certificate", "provenance"]
    assert set(js["certificate"]) == {"edges", "coloring", "checked"}
    assert js["host"] == "qn:2" and js["tree"] == "path:3"


def test_revalidate_rejects_bad_certificates():
    bad = Certificate("lower", ((0, 1), (1, 2)), (0, 0), True)
    assert not revalidate_lower(bad, 3, path_tree(2))
    rainbow = Certificate("lower", ((0, 1), (1, 2)), (0, 1), True)
    assert not revalidate_lower(rainbow, 3, path_tree(2))
    assert not revalidate_lower(Certificate("upper"), 3, path_tree(2))

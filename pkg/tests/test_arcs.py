import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arclab.arcs import (
    amalgam_check,
    direct_report,
    enumerate_arcs,
    is_arc,
    is_locally_2at_amalgam,
    is_locally_s_arc_transitive_direct,
    max_local_s,
)
from arclab.cosets import build_coset_graph, complete_bipartite, complete_graph, cycle_graph, path_graph
from arclab.groups import data_path, load_generators, symmetric
from arclab.perm import GroupError, Permutation, PermGroup, ThresholdError, intersect_small
from arclab.presets import s7_left

import oracles


def P(text, n):
    return Permutation.parse(text, n)


def G(n, *texts):
    return PermGroup([P(t, n) for t in texts], n)


def rotation(n):
    return Permutation([(i + 1) % n + 1 for i in range(n)])


def reflection(n):
    return Permutation([(-i) % n + 1 for i in range(n)])


@st.composite
def subgroup_st(draw, n):
    k = draw(st.integers(1, 2))
    gens = [Permutation([x + 1 for x in draw(st.permutations(range(n)))]) for _ in range(k)]
    return PermGroup(gens, n)


def brute_verdict(cg, s):
    perms = [g.raw for g in cg.group_action.elements()]
    adj = cg.graph.adjacency
    counts = []
    for v in (cg.left_vertex, cg.right_vertex):
        counts.append(oracles.arc_orbit_count(adj, perms, v, s))
    return counts, all(o <= 1 for _, o in counts)


@pytest.fixture(scope="module")
def s7_graph():
    return build_coset_graph(symmetric(7), s7_left(), load_generators(data_path("s7_right.txt")))


@pytest.fixture(scope="module")
def s3_toy():
    return build_coset_graph(symmetric(3), G(3, "(1,2)"), G(3, "(1,2,3)"))


# ---------------------------------------------------------------- enumeration


def test_arc_enumeration_examples(s3_toy):
    k32 = s3_toy.graph
    assert len(enumerate_arcs(k32, 0, 2)) == 4
    assert len(enumerate_arcs(path_graph(3), 0, 2)) == 1
    arcs = enumerate_arcs(cycle_graph(6), 0, 3)
    assert sorted(arcs) == [(0, 1, 2, 3), (0, 5, 4, 3)]
    assert enumerate_arcs(path_graph(2), 0, 3) == []
    with pytest.raises(GroupError):
        enumerate_arcs(k32, 0, 0)
    with pytest.raises(ThresholdError):
        enumerate_arcs(complete_graph(6), 0, 4, limit=50)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_arc_counts_on_complete_bipartite(a, b, s):
    g = complete_bipartite(a, b)
    for start, first, second in ((0, b, a), (a, a, b)):
        arcs = enumerate_arcs(g, start, s)
        expected = first
        for i in range(1, s):
            expected *= (second if i % 2 else first) - 1
        assert len(arcs) == expected
        assert all(is_arc(g, x) and x[0] == start for x in arcs)


@given(st.integers(3, 6), st.integers(1, 4))
def test_arc_counts_on_complete_graphs(n, s):
    arcs = enumerate_arcs(complete_graph(n), 0, s)
    assert len(arcs) == (n - 1) * (n - 2) ** (s - 1)
    assert len(set(arcs)) == len(arcs)


def test_arcs_match_brute_force(s7_graph):
    g = s7_graph.graph
    for v in (0, 126):
        for s in (1, 2, 3):
            mine = enumerate_arcs(g, v, s)
            assert sorted(mine) == sorted(oracles.s_arcs(g.adjacency, v, s))
            for a in mine:
                assert all(g.has_edge(x, y) for x, y in zip(a, a[1:]))
                assert all(a[i] != a[i + 2] for i in range(len(a) - 2))


# ---------------------------------------------------------------- direct route


def test_s7_locally_2_arc_transitive(s7_graph):
    rep = is_locally_s_arc_transitive_direct(s7_graph, 2)
    assert rep.verdict and rep.method == "direct"
    assert {(r.vertex, r.arc_count, r.orbit_count) for r in rep.per_orbit} == {(0, 10, 1), (126, 12, 1)}
    counts, verdict = brute_verdict(s7_graph, 2)
    assert verdict and counts == [(10, 1), (12, 1)]


def test_s7_max_local_s_pinned(s7_graph):
    # derived value, cross-checked by brute force over all 5040 elements
    assert max_local_s(s7_graph) == 3
    assert brute_verdict(s7_graph, 3)[1]
    assert not brute_verdict(s7_graph, 4)[1]


def test_s3_toy_amalgam_is_not_locally_2_arc_transitive(s3_toy):
    # |G_alpha| = 2 for a left vertex, which has 4 two-arcs, so transitivity is impossible
    rep = direct_report(s3_toy, 2)
    assert not rep.verdict
    assert {(r.vertex, r.arc_count, r.orbit_count) for r in rep.per_orbit} == {(0, 4, 2), (3, 3, 1)}
    counts, verdict = brute_verdict(s3_toy, 2)
    assert counts == [(4, 2), (3, 1)] and not verdict
    L, R, C = s3_toy.amalgam
    ac = amalgam_check(L, R, C)
    assert ac.left_2transitive and not ac.right_2transitive
    assert oracles.is_two_transitive_on_cosets({g.raw for g in L.elements()}, {C.identity().raw})
    assert not oracles.is_two_transitive_on_cosets({g.raw for g in R.elements()}, {C.identity().raw})


def test_s3_toy_max_local_s(s3_toy):
    assert max_local_s(s3_toy) == 1
    assert brute_verdict(s3_toy, 1)[1]


def test_c6_rotations_only():
    n = 6
    rep = direct_report(cycle_graph(n), 1, PermGroup([rotation(n)]))
    assert not rep.verdict
    assert [(r.arc_count, r.orbit_count) for r in rep.per_orbit] == [(2, 2)]


def test_c6_dihedral_reaches_bound():
    n = 6
    D = PermGroup([rotation(n), reflection(n)])
    assert max_local_s(cycle_graph(n), bound=9, group=D) == 9
    assert max_local_s(cycle_graph(n), bound=4, group=D) == 4


def test_direct_requires_group():
    with pytest.raises(GroupError):
        direct_report(cycle_graph(4), 1)
    with pytest.raises(GroupError):
        direct_report(cycle_graph(4), 1, PermGroup([rotation(5)]))


def test_report_serialization(s7_graph):
    d = direct_report(s7_graph, 2).to_dict()
    assert d == {"s": 2, "method": "direct", "verdict": True,
                 "per_orbit": [{"vertex": 0, "arcs": 10, "orbits": 1}, {"vertex": 126, "arcs": 12, "orbits": 1}]}


# ---------------------------------------------------------------- amalgam route


def test_s7_amalgam_route_agrees(s7_graph):
    L, R, C = s7_graph.amalgam
    ac = amalgam_check(L, R, C)
    assert (ac.left_degree, ac.right_degree) == (5, 3)
    assert ac.verdict == direct_report(s7_graph, 2).verdict is True
    assert ac.report().method == "amalgam"


def test_degree_two_convention():
    L = G(8, "(1,2,3,4)(5,6)")
    R = G(8, "(1,2,3,4)(7,8)")
    C = intersect_small(L, R)
    assert (L.order(), R.order(), C.order()) == (4, 4, 2)
    ac = amalgam_check(L, R, C)
    assert (ac.left_degree, ac.right_degree) == (2, 2) and ac.verdict
    parent = PermGroup(list(L.generators) + list(R.generators))
    cg = build_coset_graph(parent, L, R)
    assert direct_report(cg, 2).verdict


def test_amalgam_input_validation():
    L, R = G(4, "(1,2)"), G(4, "(3,4)")
    with pytest.raises(GroupError):
        amalgam_check(L, R, G(4, "(1,2)"))
    S4 = symmetric(4)
    A, B = S4.stabilizer([1]), S4.stabilizer([2])
    with pytest.raises(GroupError):
        amalgam_check(A, B, PermGroup([], 4))
    assert is_locally_2at_amalgam(A, B, intersect_small(A, B))


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 5).flatmap(lambda n: st.tuples(subgroup_st(n), subgroup_st(n))))
def test_routes_agree_on_random_amalgams(pair):
    L, R = pair
    parent = symmetric(L.degree)
    if L.order() == parent.order() or R.order() == parent.order():
        return
    cg = build_coset_graph(parent, L, R)
    direct = direct_report(cg, 2)
    assert amalgam_check(L, R, cg.common).verdict == direct.verdict
    _, brute = brute_verdict(cg, 2)
    assert brute == direct.verdict


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5).flatmap(lambda n: st.tuples(subgroup_st(n), subgroup_st(n))))
def test_monotonicity_when_arcs_extend(pair):
    L, R = pair
    parent = symmetric(L.degree)
    if L.order() == parent.order() or R.order() == parent.order():
        return
    cg = build_coset_graph(parent, L, R)
    if min(cg.valencies) < 2:
        return
    # with both valencies >= 2 every arc extends
    for s in (2, 3):
        if direct_report(cg, s).verdict:
            assert direct_report(cg, s - 1).verdict

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arclab.constructions import (
    CODE_GENERATORS,
    LISTED_WORDS,
    TAU,
    MonomialMap,
    automorphism_table,
    build_code,
    code_construction,
    construct_3_1,
    construct_3_2,
    construct_straight_nondiagonal,
    enumerate_group,
    sharply_two_transitive_on_cosets,
    verify_tau,
)
from arclab.groups import cyclic, make_agl1, symmetric, wreath_decompose
from arclab.perm import GroupError, Permutation, PermGroup, ThresholdError

import oracles


def P(text, n):
    return Permutation.parse(text, n)


def span_oracle():
    # every GF(3) combination of the two generators, computed independently
    out = set()
    for a, b in itertools.product(range(3), repeat=2):
        out.add(tuple((a * x + b * y) % 3 for x, y in zip(*CODE_GENERATORS)))
    return out


# ---------------------------------------------------------------- the ternary code


def test_code_words_and_weights():
    code = build_code()
    assert set(code.words) == span_oracle()
    assert len(code.words) == 9 and code.dimension == 2
    assert len(code.nonzero_words) == 8
    assert all(sum(1 for x in w if x) == 3 for w in code.nonzero_words)
    assert set(code.nonzero_words) == set(LISTED_WORDS)
    assert code.weight_enumerator() == {0: 1, 3: 8}


def test_code_linear_over_all_pairs():
    code = build_code()
    ws = set(code.words)
    pairs = list(itertools.product(code.words, repeat=2))
    assert len(pairs) == 81
    for u, v in pairs:
        assert tuple((x + y) % 3 for x, y in zip(u, v)) in ws
    for u in code.words:
        assert tuple(2 * x % 3 for x in u) in ws
    assert code.is_linear()


def test_equidistant():
    words = build_code().nonzero_words
    for u, v in itertools.combinations(words, 2):
        d = sum(1 for x, y in zip(u, v) if x != y)
        assert d == 3


def test_tau_certificate():
    cert = verify_tau()
    assert cert.order == 8
    assert cert.fourth_power_is_negation
    assert cert.preserves_code
    assert cert.orbit_covers_nonzero_words
    assert (TAU**8).is_identity() and not (TAU**4).is_identity()


def test_tau_orbit_against_listed_order():
    # derived: the orbit visits every word but steps through the list three at a time
    cert = verify_tau()
    assert cert.first_image == (0, 2, 1, 2) == LISTED_WORDS[3]
    assert cert.listed_step == 3
    assert not cert.matches_listed_order


def test_only_one_monomial_map_follows_listed_order():
    # exhaustive over all 384 monomial maps of length 4: the listed cycle is realised by
    # exactly one map, and that map is tau cubed rather than tau
    hits = []
    for scalars in itertools.product((1, 2), repeat=4):
        for perm in itertools.permutations(range(1, 5)):
            m = MonomialMap(scalars, perm)
            if all(m.apply(LISTED_WORDS[i]) == LISTED_WORDS[(i + 1) % 8] for i in range(8)):
                hits.append(m)
    assert hits == [MonomialMap((1, 1, 2, 1), (4, 1, 2, 3))]
    assert hits[0].order() == 8
    assert hits[0] == TAU**3 != TAU


mono_st = st.tuples(st.tuples(*[st.sampled_from((1, 2))] * 4), st.permutations((1, 2, 3, 4))).map(
    lambda t: MonomialMap(t[0], tuple(t[1])))
vec_st = st.tuples(*[st.integers(0, 2)] * 4)


@given(mono_st, mono_st, vec_st)
def test_monomial_composition(a, b, v):
    assert (a * b).apply(v) == b.apply(a.apply(v))
    assert (a ** a.order()).is_identity()
    assert (a * MonomialMap.identity(4)) == a


def test_monomial_validation():
    with pytest.raises(GroupError):
        MonomialMap((1, 1, 1, 1), (1, 1, 2, 3))
    with pytest.raises(GroupError):
        MonomialMap((1, 0, 1, 1), (1, 2, 3, 4))


# ---------------------------------------------------------------- enumeration and automorphisms


def test_enumerate_group_order():
    K = cyclic(4)
    k = K.generators[0]
    assert enumerate_group(K) == [K.identity(), k, k**2, k**3]
    S3 = symmetric(3)
    els = enumerate_group(S3)
    assert els[0].is_identity() and len(set(els)) == 6
    assert els[1:1 + len(S3.generators)] == list(S3.generators)
    with pytest.raises(ThresholdError):
        enumerate_group(symmetric(6), max_enum=100)


def test_automorphism_table():
    C5 = PermGroup([P("(1,2,3,4,5)", 5)])
    l = C5.generators[0]
    tab = automorphism_table(C5, [l**2])
    assert len(tab) == 5
    assert all(tab[(l**i).raw] == (l ** (2 * i)).raw for i in range(5))
    with pytest.raises(GroupError):
        automorphism_table(C5, [C5.identity()])
    with pytest.raises(GroupError):
        automorphism_table(C5, [P("(1,2)", 5)])
    S3 = symmetric(3)
    with pytest.raises(GroupError):
        # sends a 3-cycle to an involution
        automorphism_table(S3, [S3.generators[1], S3.generators[1]])


# ---------------------------------------------------------------- straight-twisted builder


C5_GEN = P("(1,2,3,4,5)", 5)


def test_construct_3_1_twisting():
    H = symmetric(5)
    L1 = PermGroup([C5_GEN])
    R1 = PermGroup([P("(1,2)", 5)])
    K = cyclic(4)
    kg = K.generators[0]
    pc = construct_3_1(H, L1, R1, K, {kg: [C5_GEN**2]})
    assert pc.k == 4 and pc.degree == 20
    entries, top = wreath_decompose(5, 4, pc.N_alpha.generators[0])
    assert entries == [C5_GEN, C5_GEN**2, C5_GEN**4, C5_GEN**3] and top.is_identity()
    entries, _ = wreath_decompose(5, 4, pc.N_beta.generators[0])
    assert entries == [P("(1,2)", 5)] * 4
    assert pc.G_alpha.order() == 5 * 4 and pc.G_beta.order() == 2 * 4
    assert pc.common.order() == 4
    assert pc.tops_normalize(pc.N_alpha) and pc.tops_normalize(pc.N_beta)
    va, vb = pc.classify()
    assert (va.verdict, vb.verdict) == ("twisted", "straight")


def test_construct_3_1_tops_translate_coordinates():
    H = symmetric(5)
    K = cyclic(3)
    kg = K.generators[0]
    pc = construct_3_1(H, PermGroup([C5_GEN]), PermGroup([P("(1,2)", 5)]), K, {kg: [C5_GEN]})
    _, top = wreath_decompose(5, 3, pc.tops[0])
    assert top.order() == 3
    assert PermGroup([top]).is_transitive()


def test_construct_3_1_rejections():
    H = symmetric(5)
    L1 = PermGroup([C5_GEN])
    R1 = PermGroup([P("(1,2)", 5)])
    triv = PermGroup([], 1)
    with pytest.raises(GroupError):
        construct_3_1(H, L1, R1, triv, {})
    K = cyclic(2)
    kg = K.generators[0]
    with pytest.raises(GroupError):
        # x -> x^2 has order 4 in Aut(C_5), so C_2 cannot act this way
        construct_3_1(H, L1, R1, K, {kg: [C5_GEN**2]})
    with pytest.raises(GroupError):
        construct_3_1(H, L1, R1, K, {kg: [L1.identity()]})
    with pytest.raises(GroupError):
        construct_3_1(H, PermGroup([P("(1,2,3,4,5,6)", 6)]), R1, K, {kg: [C5_GEN]})
    with pytest.raises(GroupError):
        construct_3_1(H, L1, R1, K, {})


def test_construct_3_1_must_fix_intersection():
    H = symmetric(5)
    L1 = PermGroup([C5_GEN])
    K = cyclic(2)
    kg = K.generators[0]
    with pytest.raises(GroupError):
        construct_3_1(H, L1, L1, K, {kg: [C5_GEN.inverse()]})
    # fixing it is fine
    pc = construct_3_1(H, L1, L1, K, {kg: [C5_GEN]})
    assert pc.G_alpha.order() == 10


# ---------------------------------------------------------------- twisted-twisted builder


@pytest.fixture(scope="module")
def synthetic_3_2():
    H = symmetric(6)
    L1 = PermGroup([P("(1,2,3,4,5)", 6)])
    a, b = P("(1,2)(3,4)", 6), P("(5,6)", 6)
    R1 = PermGroup([a, b])
    K_L, K_R = cyclic(2), cyclic(2)
    pc = construct_3_2(H, L1, R1,
                       K_L, {K_L.generators[0]: [L1.generators[0].inverse()]},
                       K_R, {K_R.generators[0]: [b, a]})
    return pc, L1, R1


def test_construct_3_2_orders(synthetic_3_2):
    pc, L1, R1 = synthetic_3_2
    assert pc.k == 4 and pc.degree == 24
    assert pc.G_alpha.order() == L1.order() * 4 == 20
    assert pc.G_beta.order() == R1.order() * 4 == 16
    assert pc.tops_normalize(pc.N_alpha) and pc.tops_normalize(pc.N_beta)
    assert pc.N_alpha.order() == 5 and pc.N_beta.order() == 4
    va, vb = pc.classify()
    assert va.verdict == "twisted" and vb.verdict == "twisted"


def test_construct_3_2_orders_against_closure(synthetic_3_2):
    pc, _, _ = synthetic_3_2
    for grp in (pc.G_alpha, pc.G_beta):
        assert grp.order() == len(oracles.closure([g.raw for g in grp.generators], grp.degree))


def test_trivial_action_convention():
    # a nontrivial K acting trivially on both sides is accepted and gives straight stabilizers
    H = symmetric(5)
    L1 = PermGroup([C5_GEN])
    R1 = PermGroup([P("(1,2)", 5)])
    K_L, K_R = cyclic(2), cyclic(3)
    pc = construct_3_2(H, L1, R1, K_L, {K_L.generators[0]: [C5_GEN]},
                       K_R, {K_R.generators[0]: [P("(1,2)", 5)]})
    assert pc.k == 6
    assert pc.G_alpha.order() == 30 and pc.G_beta.order() == 12
    va, vb = pc.classify()
    assert (va.verdict, vb.verdict) == ("straight", "straight")


# ---------------------------------------------------------------- code-driven assembly


def test_code_construction_validation():
    H = symmetric(3)
    e = H.identity()
    g = P("(1,2,3)", 3)
    with pytest.raises(GroupError):
        code_construction(H, [(g, g, g)], [], (e, e, e, e))
    with pytest.raises(GroupError):
        code_construction(H, [(g, g, g, P("(1,4)", 4))], [], (e, e, e, e))
    pc = code_construction(H, [(g, g, g, g)], [(g, e, e, e)], (e, e, e, e))
    assert pc.tops[0].order() == 4


# ---------------------------------------------------------------- straight-nondiagonal family


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_straight_nondiagonal_family(n):
    s = construct_straight_nondiagonal(n)
    pc = s.construction
    f = math.factorial
    assert s.expected_orders() == (8 * f(n), 72 * f(n - 1), 8 * f(n - 1))
    assert pc.amalgam_orders() == s.expected_orders()
    assert pc.valencies() == (n, 9)
    assert pc.degree == 4 * (n + 2)
    va, vb = pc.classify()
    assert va.verdict == "straight" and vb.verdict == "nondiagonal"
    assert vb.order == 18 * f(n - 1) and vb.projection_orders == (6 * f(n - 1),) * 4
    assert pc.N.order() % (f(n + 2) // 2) ** 4 == 0


def test_straight_nondiagonal_n3_examples():
    s = construct_straight_nondiagonal(3)
    pc = s.construction
    assert pc.amalgam_orders() == (48, 144, 16)
    assert pc.amalgam_check().verdict
    assert sharply_two_transitive_on_cosets(pc.G_beta, pc.common)
    assert all(a ^ pc.tops[0] == a for a in pc.N_alpha.generators)
    assert pc.tops_normalize(pc.N_beta)


def test_straight_nondiagonal_rejects_small_n():
    with pytest.raises(GroupError):
        construct_straight_nondiagonal(2)


# ---------------------------------------------------------------- sharp 2-transitivity


def test_sharply_two_transitive_on_cosets():
    S4 = symmetric(4)
    assert not sharply_two_transitive_on_cosets(S4, S4.stabilizer([4]))
    S3 = symmetric(3)
    assert sharply_two_transitive_on_cosets(S3, S3.stabilizer([3]))
    A = make_agl1(9)
    assert sharply_two_transitive_on_cosets(A, A.stabilizer([1]))

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import GF, Poly, symbols
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from arclab.fields import FieldError, FiniteField, is_prime_power, least_irreducible, prime_power

X = symbols("x")
FIELDS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 243, 256]


def _digits(a, p, m):
    return [(a // p**i) % p for i in range(m)]


def _to_poly(a, F):
    coeffs = _digits(a, F.p, F.m)
    return Poly(list(reversed(coeffs)), X, domain=GF(F.p))


def _from_poly(poly, F):
    coeffs = list(reversed(poly.all_coeffs()))
    return sum((int(c) % F.p) * F.p**i for i, c in enumerate(coeffs))


def test_prime_power_detection():
    assert prime_power(243) == (3, 5)
    assert prime_power(61) == (61, 1)
    assert is_prime_power(4096)
    for bad in (1, 6, 12, 100):
        assert not is_prime_power(bad)
    with pytest.raises(FieldError):
        prime_power(10)


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (2, 8), (3, 2), (3, 4), (5, 2), (7, 3)])
def test_modulus_is_least_irreducible(p, m):
    mod = least_irreducible(p, m)
    assert gf_irreducible_p(list(reversed(mod)), p, ZZ)
    code = sum(c * p**i for i, c in enumerate(mod[:-1]))
    for smaller in range(code):
        cand = _digits(smaller, p, m) + [1]
        assert not gf_irreducible_p(list(reversed(cand)), p, ZZ)


def test_gf16_modulus_documented():
    # x^4 + x + 1
    assert least_irreducible(2, 4) == (1, 1, 0, 0, 1)


@pytest.mark.parametrize("q", FIELDS)
def test_field_axioms_full_enumeration(q):
    F = FiniteField(q)
    els = list(F.elements())
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    # generator has order exactly q - 1
    powers = {F.prim_power(e) for e in range(q - 1)}
    assert powers == set(range(1, q))
    if q <= 32:
        for a in els:
            for b in els:
                assert F.add(a, b) == F.add(b, a)
                assert F.mul(a, b) == F.mul(b, a)
                for c in (0, 1, q - 1, q // 2):
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("q", [4, 8, 9, 16, 27, 64, 81, 256])
def test_multiplication_matches_sympy(q):
    F = FiniteField(q)
    mod = Poly(list(reversed(F.modulus)), X, domain=GF(F.p))
    step = max(1, q // 20)
    for a in range(0, q, step):
        for b in range(0, q, step):
            expected = _from_poly((_to_poly(a, F) * _to_poly(b, F)).rem(mod), F)
            assert F.mul(a, b) == expected


@given(st.sampled_from(FIELDS).flatmap(lambda q: st.tuples(st.just(q), st.integers(0, q - 1), st.integers(0, q - 1))))
def test_frobenius_is_automorphism(args):
    q, a, b = args
    F = FiniteField(q)
    fr = F.frobenius
    assert fr(F.add(a, b)) == F.add(fr(a), fr(b))
    assert fr(F.mul(a, b)) == F.mul(fr(a), fr(b))


def test_frobenius_bijective_gf2m():
    for q in (4, 8, 16, 32, 64):
        F = FiniteField(q)
        assert sorted(F.frobenius(a) for a in F.elements()) == list(F.elements())


def test_subfields_of_gf16():
    F = FiniteField(16)
    assert len(F.subfield(1)) == 2 and len(F.subfield(2)) == 4 and len(F.subfield(4)) == 16
    sub = set(F.subfield(2))
    assert all(F.mul(a, b) in sub and F.add(a, b) in sub for a in sub for b in sub)
    z = F.subfield_generator(2)
    assert {F.pow(z, i) for i in range(3)} == sub - {0}
    with pytest.raises(FieldError):
        F.subfield(3)


def test_rejects_large_or_invalid():
    with pytest.raises(FieldError):
        FiniteField(2**17)
    with pytest.raises(FieldError):
        FiniteField(6)

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moonshine.exact_arith import (
    ConductorOverflow,
    Cyclotomic,
    cyc_conj,
    cyc_embed,
    cyc_mul,
    euler_phi,
    format_rational,
    parse_rational,
)


def taylor_cos_sin(x, terms=30):
    """cos and sin by their power series, no math library."""
    c = s = 0.0
    term = 1.0
    for k in range(2 * terms):
        if k % 4 == 0:
            c += term
        elif k % 4 == 1:
            s += term
        elif k % 4 == 2:
            c -= term
        else:
            s -= term
        term *= x / (k + 1)
    return c, s


def test_rational_roundtrip():
    for text in ["0", "3", "-7/4", "10/4"]:
        r = parse_rational(text)
        assert parse_rational(format_rational(r)) == r
    assert format_rational(Fraction(10, 4)) == "5/2"
    assert format_rational(Fraction(0)) == "0"
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_zeta4_squared_is_minus_one():
    z4 = Cyclotomic.zeta(4)
    assert cyc_mul(z4, z4) == Cyclotomic.rational(-1)
    assert cyc_mul(z4, z4).as_rational() == -1


def test_unit_and_root_of_unity_order():
    x = Cyclotomic(12, {1: 3, 5: Fraction(-1, 2)})
    assert cyc_mul(Cyclotomic.rational(1), x) == x
    z3 = Cyclotomic.zeta(3)
    assert z3 * z3 * z3 == 1


def test_zeta8_embedding_against_taylor():
    c, s = taylor_cos_sin(math.pi / 4)
    z = cyc_embed(Cyclotomic.zeta(8))
    assert abs(z.real - c) < 1e-12 and abs(z.imag - s) < 1e-12
    assert abs(z.real - 0.7071067811865476) < 1e-12


def test_simple_embeddings():
    assert cyc_embed(Cyclotomic.rational(1)) == 1 + 0j
    v = cyc_embed(Cyclotomic.zeta(6) + Cyclotomic.zeta(6, 5))
    assert abs(v - 1) < 1e-12
    assert Cyclotomic.zeta(6) + Cyclotomic.zeta(6, 5) == 1


def test_conjugation():
    assert cyc_conj(Cyclotomic.zeta(5)) == Cyclotomic.zeta(5, 4)
    r = Cyclotomic.rational(Fraction(3, 7), 9)
    assert cyc_conj(r) == r


def test_equality_across_conductors():
    assert Cyclotomic.zeta(4) == Cyclotomic.zeta(8, 2)
    assert Cyclotomic.zeta(3) != Cyclotomic.zeta(6)
    assert Cyclotomic.root_of_unity(Fraction(1, 2)) == -1


@pytest.mark.parametrize("m", [1, 2, 3, 5, 6, 8, 12])
def test_sqrt_int(m):
    r = Cyclotomic.sqrt_int(m)
    assert r * r == m
    assert abs(cyc_embed(r) - math.sqrt(m)) < 1e-12


def test_storage_is_reduced():
    # 1 + zeta_3 + zeta_3^2 = 0 must be recognised
    z = Cyclotomic(3, {0: 1, 1: 1, 2: 1})
    assert z.is_zero()
    x = Cyclotomic(15, {e: 1 for e in range(15)})
    assert all(e < euler_phi(15) for e in x.coeffs)


def test_json_terms_roundtrip():
    x = Cyclotomic(24, {1: Fraction(2, 3), 7: -1})
    assert Cyclotomic.from_terms(24, x.to_terms()) == x


def test_conductor_cap(monkeypatch):
    monkeypatch.setenv("MOONSHINE_MAX_CONDUCTOR", "100")
    with pytest.raises(ConductorOverflow):
        Cyclotomic.zeta(101)
    Cyclotomic.zeta(100)


conductors = st.integers(1, 60)


@st.composite
def cyclotomics(draw, n=None):
    n = n or draw(conductors)
    coeffs = draw(
        st.dictionaries(
            st.integers(0, n - 1),
            st.fractions(min_value=-5, max_value=5, max_denominator=6),
            max_size=4,
        )
    )
    return Cyclotomic(n, coeffs)


@st.composite
def same_conductor(draw, count):
    n = draw(conductors)
    return [draw(cyclotomics(n)) for _ in range(count)]


@settings(max_examples=60, deadline=None)
@given(same_conductor(3))
def test_field_axioms(xs):
    a, b, c = xs
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 24).flatmap(cyclotomics), st.integers(1, 24), st.data())
def test_mixed_conductors(a, m, data):
    b = data.draw(cyclotomics(m))
    assert cmath.isclose((a * b).embed(), a.embed() * b.embed(), abs_tol=1e-10)
    assert cmath.isclose((a + b).embed(), a.embed() + b.embed(), abs_tol=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8).flatmap(same_conductor))
def test_embedding_is_a_homomorphism(xs):
    prod = Cyclotomic.rational(1)
    ref = 1 + 0j
    for x in xs:
        prod = prod * x
        ref *= cyc_embed(x)
    scale = max(1.0, abs(ref))
    assert abs(cyc_embed(prod) - ref) <= 1e-10 * scale


@settings(max_examples=60, deadline=None)
@given(cyclotomics())
def test_conj_is_an_involution(a):
    assert cyc_conj(cyc_conj(a)) == a
    assert cmath.isclose(cyc_embed(cyc_conj(a)), cyc_embed(a).conjugate(), abs_tol=1e-10)


@settings(max_examples=40, deadline=None)
@given(cyclotomics(), st.fractions(min_value=1, max_value=9, max_denominator=5))
def test_division_by_rationals(a, r):
    assert (a / r) * r == a

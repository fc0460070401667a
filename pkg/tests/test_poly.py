"""Polynomial ring operations, parsing, and formatting."""

import itertools

import pytest

import matrix_census as mc
from matrix_census.poly import Polynomial

from conftest import make_rng, rand_poly


F2 = mc.make_field(2)
F3 = mc.make_field(3)
F4 = mc.make_field(2, 2)
F9 = mc.make_field(3, 2)


def P(field, *coeffs):
    """Polynomial from ascending coefficient indices."""
    return Polynomial(field, list(coeffs))


def test_construction_strips_trailing_zeros():
    f = P(F3, 1, 2, 0, 0)
    assert f.coeff_indices == (1, 2)
    assert f.degree == 1
    assert P(F3).is_zero and P(F3, 0, 0).is_zero
    assert P(F3).degree == mc.NEG_INF


def test_construction_accepts_elements_and_reduces_ints():
    f = Polynomial(F3, [F3.element(2), 4])  # 4 reduces to 1 mod 3
    assert f.coeff_indices == (2, 1)
    with pytest.raises(ValueError):
        Polynomial(F9, [9])  # extension fields take indices, not residues
    g = Polynomial(F9, [F9.element(8)])
    assert g.coeff_indices == (8,)


def test_classmethod_constructors():
    assert Polynomial.zero(F3).is_zero
    assert Polynomial.one(F3).coeff_indices == (1,)
    assert Polynomial.x(F3).coeff_indices == (0, 1)
    assert Polynomial.monomial(F3, 3, 2).coeff_indices == (0, 0, 0, 2)
    assert Polynomial.monomial(F3, 2).degree == 2


def test_degree_and_monic_flags():
    assert P(F3, 2).degree == 0
    assert P(F3, 0, 0, 1).degree == 2
    assert P(F3, 0, 0, 1).is_monic
    assert not P(F3, 0, 0, 2).is_monic
    assert not P(F3).is_monic
    assert P(F3, 1, 2).leading == F3.element(2)


def test_ring_axioms_random():
    rng = make_rng(7)
    for field in (F2, F3, F9):
        for _ in range(60):
            f = rand_poly(field, rng.randrange(0, 5), rng, monic=False)
            g = rand_poly(field, rng.randrange(0, 5), rng, monic=False)
            h = rand_poly(field, rng.randrange(0, 5), rng, monic=False)
            assert f + g == g + f
            assert (f + g) + h == f + (g + h)
            assert f * g == g * f
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert f - f == Polynomial.zero(field)
            assert f + (-f) == Polynomial.zero(field)
            assert f * Polynomial.one(field) == f


def test_multiplication_against_convolution():
    rng = make_rng(11)
    for _ in range(40):
        f = rand_poly(F3, rng.randrange(0, 5), rng, monic=False)
        g = rand_poly(F3, rng.randrange(0, 5), rng, monic=False)
        fa, ga = f.coeff_indices, g.coeff_indices
        out = [0] * (len(fa) + len(ga))
        for i, a in enumerate(fa):
            for j, b in enumerate(ga):
                out[i + j] = (out[i + j] + a * b) % 3
        assert (f * g).coeff_indices == Polynomial(F3, out).coeff_indices


def test_divmod_invariant():
    rng = make_rng(13)
    for field in (F2, F3, F4):
        for _ in range(80):
            f = rand_poly(field, rng.randrange(0, 7), rng, monic=False)
            g = rand_poly(field, rng.randrange(1, 4), rng, monic=False)
            quo, rem = divmod(f, g)
            assert quo * g + rem == f
            assert rem.is_zero or rem.degree < g.degree
            assert f // g == quo and f % g == rem


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(P(F2, 1, 1), Polynomial.zero(F2))


def test_gcd_known_value():
    # x^2+x = x(x+1) and x^2+1 = (x+1)^2 over GF(2) share exactly x+1.
    a = P(F2, 0, 1, 1)
    b = P(F2, 1, 0, 1)
    assert a.gcd(b) == P(F2, 1, 1)


def test_gcd_properties():
    rng = make_rng(17)
    for field in (F2, F3, F9):
        for _ in range(50):
            d = rand_poly(field, rng.randrange(0, 3), rng)
            f = d * rand_poly(field, rng.randrange(0, 4), rng, monic=False)
            g = d * rand_poly(field, rng.randrange(0, 4), rng, monic=False)
            got = f.gcd(g)
            if f.is_zero and g.is_zero:
                assert got.is_zero
                continue
            assert got.is_monic
            assert (f % got).is_zero and (g % got).is_zero
            assert (got % d).is_zero  # common divisors divide the gcd
    assert Polynomial.zero(F2).gcd(Polynomial.zero(F2)).is_zero
    assert P(F3, 0, 2).gcd(Polynomial.zero(F3)) == P(F3, 0, 1)


def test_pow_plain_and_modular():
    f = P(F3, 1, 1)
    assert f ** 0 == Polynomial.one(F3)
    assert f ** 3 == f * f * f
    m = P(F3, 1, 0, 1)
    assert pow(f, 5, m) == (f ** 5) % m
    # x^(q^n) = x mod f for irreducible f (here x^2+1 over GF(3), q^n = 9)
    x = Polynomial.x(F3)
    assert pow(x, 9, m) == x % m
    with pytest.raises(ValueError):
        f ** -1


def test_evaluation_horner_matches_direct():
    rng = make_rng(19)
    for field in (F3, F9):
        for _ in range(30):
            f = rand_poly(field, rng.randrange(0, 5), rng, monic=False)
            a = field.element(rng.randrange(field.q))
            direct = field.zero()
            for i, c in enumerate(f.coeff_indices):
                direct = direct + field.element(c) * a ** i
            assert f(a) == direct
    with pytest.raises(TypeError):
        P(F3, 1, 1)(2)  # evaluation points must be field elements
    with pytest.raises(ValueError):
        P(F3, 1, 1)(F2.element(1))


def test_scale_and_monic():
    f = P(F3, 1, 2)
    assert f.scale(2) == P(F3, 2, 1)
    assert f.monic() == f.scale(F3.inv(2))
    assert f.monic().is_monic
    # zero passes through so gcd(0, 0) can stay 0
    assert Polynomial.zero(F3).monic().is_zero


def test_derivative_rules():
    rng = make_rng(23)
    for field in (F2, F3, F9):
        for _ in range(40):
            f = rand_poly(field, rng.randrange(0, 6), rng, monic=False)
            g = rand_poly(field, rng.randrange(0, 6), rng, monic=False)
            assert (f * g).derivative() == \
                f.derivative() * g + f * g.derivative()
            assert (f + g).derivative() == f.derivative() + g.derivative()
    # p-th powers have zero derivative
    assert (P(F2, 1, 1) * P(F2, 1, 1)).derivative().is_zero
    assert P(F3, 0, 0, 0, 1).derivative().is_zero  # x^3 over GF(3)


def test_compose_pointwise():
    rng = make_rng(29)
    for field in (F3, F4):
        for _ in range(20):
            f = rand_poly(field, rng.randrange(0, 4), rng, monic=False)
            g = rand_poly(field, rng.randrange(0, 4), rng, monic=False)
            h = f.compose(g)
            for a in field.elements():
                assert h(a) == f(g(a))


def test_monic_polys_enumeration():
    for field, d in ((F2, 3), (F3, 2), (F4, 1)):
        polys = list(mc.monic_polys(field, d))
        assert len(polys) == field.q ** d
        assert len(set(polys)) == len(polys)
        assert all(g.is_monic and g.degree == d for g in polys)
    # degree 0: just the constant 1
    assert list(mc.monic_polys(F3, 0)) == [Polynomial.one(F3)]


def test_sort_key_orders_by_degree_first():
    polys = [P(F3, 2, 1), P(F3, 1), P(F3, 0, 0, 1), P(F3, 0, 1)]
    ordered = sorted(polys, key=Polynomial.sort_key)
    degrees = [g.degree for g in ordered]
    assert degrees == sorted(degrees)
    assert ordered[0] == P(F3, 1)
    assert ordered[-1] == P(F3, 0, 0, 1)
    # all monic quadratics over GF(2): ascending coefficient tuples compare
    # lexicographically, constant coefficient first
    quads = sorted(mc.monic_polys(F2, 2), key=Polynomial.sort_key)
    assert [mc.format_poly(g) for g in quads] == \
        ["x^2", "x^2+x", "x^2+1", "x^2+x+1"]


def test_format_examples():
    assert mc.format_poly(P(F2, 1, 1, 1)) == "x^2+x+1"
    assert mc.format_poly(P(F3, 0, 1, 0, 2)) == "2*x^3+x"
    assert mc.format_poly(P(F3, 2)) == "2"
    assert mc.format_poly(Polynomial.zero(F3)) == "0"
    assert mc.format_poly(Polynomial.x(F3)) == "x"
    assert mc.format_poly(P(F9, 5, 1)) == "x+5"


def test_parse_round_trip_exhaustive_small():
    for field, d in ((F2, 4), (F3, 3), (F9, 2)):
        for idxs in itertools.product(range(field.q), repeat=d):
            f = Polynomial(field, list(idxs))
            assert mc.parse_poly(mc.format_poly(f), field) == f


def test_parse_accepts_spaces_and_repeated_terms():
    assert mc.parse_poly(" x^2 + x + 1 ", F2) == P(F2, 1, 1, 1)
    assert mc.parse_poly("x+x", F2).is_zero  # coefficients add in the field
    assert mc.parse_poly("x+x", F3) == P(F3, 0, 2)
    assert mc.parse_poly("2*x^2+2*x^2", F3) == P(F3, 0, 0, 1)
    # coefficient literals are canonical indices, not arbitrary residues
    with pytest.raises(mc.ParseError):
        mc.parse_poly("3", F2)


def test_parse_errors_carry_positions():
    cases = ["", "x^", "2x", "x^2+", "*x", "x^2++1", "y", "x^-1"]
    for text in cases:
        with pytest.raises(mc.ParseError) as info:
            mc.parse_poly(text, F2)
        assert info.value.position >= 0
        assert "position" in str(info.value)
    assert mc.parse_poly("8*x", F9) == P(F9, 0, 8)  # indices up to q-1 parse
    with pytest.raises(mc.ParseError):
        mc.parse_poly("9*x", F9)


def test_parse_degree_cap():
    with pytest.raises(mc.ParseError):
        mc.parse_poly("x^65537", F2)


def test_hash_and_equality_across_fields():
    assert P(F2, 1, 1) == P(F2, 1, 1)
    assert P(F2, 1, 1) != P(F3, 1, 1)
    assert hash(P(F2, 1, 1)) == hash(P(F2, 1, 1))
    assert P(F2, 1, 1) != "x+1"


def test_mixed_field_arithmetic_rejected():
    with pytest.raises(ValueError):
        P(F2, 1, 1) + P(F3, 1, 1)
    with pytest.raises(TypeError):
        P(F2, 1, 1) + 1

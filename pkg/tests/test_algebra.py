import random

import pytest

from fqdiv.algebra import (LaurentSeries, Poly, RationalFunc, embed, factor, get_field,
                           is_irreducible_trial, parse_poly, parse_rational, poly_gcd,
                           poly_gcdext, random_poly, series_invert)
from fqdiv.errors import InvalidArgument, PrecisionExhausted


def P(s, F):
    return parse_poly(s, F)


# fields ------------------------------------------------------------------------------------
@pytest.mark.parametrize('q', [2, 3, 4, 5, 8, 9])
def test_field_axioms(q):
    F = get_field(q)
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in range(q):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)


def test_composite_q_rejected():
    with pytest.raises(InvalidArgument):
        get_field(6)


# polynomials -------------------------------------------------------------------------------
def test_parse_round_trip(F2, F3):
    for F, s in ((F2, '1+t+t^3'), (F3, '2+t^2+2*t^5'), (F2, '0'), (F2, 't')):
        p = P(s, F)
        assert P(str(p), F) == p


def test_gcdext_example(F2):
    g, u, v = poly_gcdext(P('t+1', F2), P('t^2+1', F2))
    assert g == P('t+1', F2)
    assert P('t+1', F2) * u + P('t^2+1', F2) * v == g


def test_gcdext_with_zero(F3):
    a = P('2+t+2*t^2', F3)
    g, u, v = poly_gcdext(a, Poly.zero(F3))
    assert g == a.monic()
    assert u == Poly.const(F3, F3.inv(a.lc))
    assert not v


def test_gcdext_coprime(F2):
    a, b = P('t^3+t+1', F2), P('t^2+1', F2)
    g, u, v = poly_gcdext(a, b)
    assert g == Poly.one(F2)
    assert a * u + b * v == Poly.one(F2)


def test_gcdext_both_zero(F2):
    with pytest.raises(InvalidArgument):
        poly_gcdext(Poly.zero(F2), Poly.zero(F2))


@pytest.mark.parametrize('q', [2, 3, 4])
def test_gcdext_random(q):
    F = get_field(q)
    rng = random.Random(q)
    for _ in range(300):
        a, b = random_poly(F, rng.randint(0, 30), rng), random_poly(F, rng.randint(0, 30), rng)
        if not a and not b:
            continue
        g, u, v = poly_gcdext(a, b)
        assert a * u + b * v == g
        assert g.lc == 1
        assert g.divides(a) and g.divides(b)
        # the minimal-pair degree bounds need both cofactors a/g, b/g non-constant
        if a and b and a.deg > g.deg and b.deg > g.deg:
            assert not u or u.deg < b.deg - g.deg
            assert not v or v.deg < a.deg - g.deg


def test_factor_examples(F2):
    assert factor(P('t^2+t', F2)) == [(P('t', F2), 1), (P('t+1', F2), 1)]
    assert factor(P('t^2+t+1', F2)) == [(P('t^2+t+1', F2), 1)]
    assert factor(Poly.const(F2, 1)) == []
    with pytest.raises(InvalidArgument):
        factor(Poly.zero(F2))


@pytest.mark.parametrize('q', [2, 3, 4])
def test_factor_random(q):
    F = get_field(q)
    rng = random.Random(10 + q)
    for _ in range(150):
        f = random_poly(F, rng.randint(1, 20), rng)
        if not f or f.deg < 1:
            continue
        prod = Poly.const(F, f.lc)
        for g, e in factor(f):
            assert g.lc == 1 and is_irreducible_trial(g)
            prod = prod * g ** e
        assert prod == f


# series ------------------------------------------------------------------------------------
def test_series_invert_examples(F2, F3):
    x = embed(P('t+1', F2), 20).truncate(20)
    # 1 + 1/t is t^-1 * (t + 1)
    y = embed(RationalFunc(P('t+1', F2), P('t', F2)), 20)
    inv = series_invert(y)
    assert all(inv.coefficient(k) == 1 for k in range(0, 20))
    t = embed(P('t', F2), 20)
    assert series_invert(t).valuation() == 1
    z = series_invert(embed(P('t+1', F3), 20))
    assert [z.coefficient(k) for k in range(1, 6)] == [1, 2, 1, 2, 1]
    assert (z * embed(P('t+1', F3), 20)).agrees(embed(Poly.one(F3), 20), 18)
    assert x.valuation() == -1


def test_series_invert_zero(F2):
    with pytest.raises(PrecisionExhausted):
        series_invert(LaurentSeries.zero(F2, 10))


def test_embed_examples(F2):
    s = embed(parse_rational('t/(t+1)', F2), 16)
    assert all(s.coefficient(k) == 1 for k in range(0, 16))
    a = P('1+t^3', F2)
    assert embed(a, 16).valuation() == -3
    assert embed(Poly.zero(F2), 16).is_zero()


@pytest.mark.parametrize('q', [2, 3, 4])
def test_embed_is_ring_morphism(q):
    F = get_field(q)
    rng = random.Random(q * 7)
    K = 40
    for _ in range(40):
        def rnd():
            while True:
                n, d = random_poly(F, rng.randint(0, 6), rng), random_poly(F, rng.randint(0, 6), rng)
                if n and d:
                    return RationalFunc(n, d)
        x, y = rnd(), rnd()
        assert (embed(x, K) * embed(y, K)).agrees(embed(x * y, K), K - 14)
        if x + y:
            assert (embed(x, K) + embed(y, K)).agrees(embed(x + y, K), K - 14)


def test_ultrametric(F3):
    rng = random.Random(5)
    for _ in range(200):
        a, b = random_poly(F3, rng.randint(0, 8), rng), random_poly(F3, rng.randint(0, 8), rng)
        if not a or not b or not a + b:
            continue
        va, vb, vs = -a.deg, -b.deg, -(a + b).deg
        assert vs >= min(va, vb)
        if va != vb:
            assert vs == min(va, vb)


def test_gcd_matches_gcdext(F3):
    a, b = P('t^4+2*t+1', F3) * P('t+1', F3), P('t^2+2', F3) * P('t+1', F3)
    assert poly_gcd(a, b) == poly_gcdext(a, b)[0]

import math
import random

import pytest

from fqdiv.algebra import RationalFunc, get_field, parse_poly, parse_rational, random_poly
from fqdiv.errors import InvalidArgument
from fqdiv.valuations import (Place, PlaceSet, degree_sum_check, is_s_integral, parse_place,
                              valuation_at)


def R(s, F):
    return parse_rational(s, F)


def test_valuation_examples(F2):
    assert valuation_at(R('t^3/(t+1)', F2), parse_place('t', F2)) == 3
    assert valuation_at(R('0', F2), parse_place('t', F2)) == math.inf
    assert valuation_at(R('t^2/(t^3+1)', F2), Place.infinite(F2)) == 1


def test_place_requires_irreducible(F2):
    with pytest.raises(InvalidArgument):
        Place(F2, parse_poly('t^2+1', F2))
    with pytest.raises(InvalidArgument):
        PlaceSet([Place.infinite(F2), Place.infinite(F2)])


def test_s_integral_examples(F2, F3):
    S = PlaceSet([Place.infinite(F2)])
    assert is_s_integral(R('t', F2), S)
    assert not is_s_integral(R('1/t', F2), S)
    assert is_s_integral(R('1', F3), PlaceSet([parse_place('t', F3)]))
    S2 = PlaceSet([Place.infinite(F2), parse_place('t', F2)])
    assert is_s_integral(R('1/t', F2), S2)


def test_degree_sum_examples(F2):
    assert degree_sum_check(R('t', F2)) == 0
    assert degree_sum_check(R('(t^2+1)/t', F2)) == 0
    assert degree_sum_check(R('1', F2)) == 0
    with pytest.raises(InvalidArgument):
        degree_sum_check(R('0', F2))


def _rand_rat(F, rng, deg=6):
    while True:
        n, d = random_poly(F, rng.randint(0, deg), rng), random_poly(F, rng.randint(0, deg), rng)
        if n and d:
            return RationalFunc(n, d)


@pytest.mark.parametrize('q', [2, 3, 4])
def test_homomorphism_and_ultrametric(q):
    F = get_field(q)
    rng = random.Random(q)
    places = [Place.infinite(F), parse_place('t', F), parse_place('t+1', F)]
    for _ in range(200):
        x, y = _rand_rat(F, rng), _rand_rat(F, rng)
        for v in places:
            assert valuation_at(x * y, v) == valuation_at(x, v) + valuation_at(y, v)
            assert valuation_at(x + y, v) >= min(valuation_at(x, v), valuation_at(y, v))


def test_s_integers_form_a_ring(F3):
    rng = random.Random(3)
    S = PlaceSet([Place.infinite(F3), parse_place('t', F3)])
    found = []
    while len(found) < 60:
        x = _rand_rat(F3, rng, 4)
        if is_s_integral(x, S):
            found.append(x)
    for x, y in zip(found, found[1:]):
        assert is_s_integral(x + y, S)
        assert is_s_integral(x * y, S)

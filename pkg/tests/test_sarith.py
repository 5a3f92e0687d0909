import json
import random

import pytest

from fqdiv.algebra import get_field
from fqdiv.errors import InvalidArgument
from fqdiv.matgroup import LAURENT, GroupMatrix, eval_word
from fqdiv.sarith import (ProductProxy, TwoPlaceProblem, birkhoff_factor, diag_fixture, diag_word,
                          diagonal, diagonal_exponents, external_connect_s,
                          laurent_generating_set, random_laurent_element,
                          random_laurent_elementary, sigma_word)
from fqdiv.trajectories import (TrajectoryCertificate, external_connect, proxy_dist,
                                random_word_element)


def lp(s, F):
    return GroupMatrix.parse(s, F).to_laurent()


def ident(F):
    return GroupMatrix.identity(3, F, LAURENT)


def is_poly(g):
    return all(e.is_poly() for r in g.rows for e in r)


def is_inverse_poly(g):
    return all(e.sigma().is_poly() for r in g.rows for e in r)


def test_birkhoff_polynomial_input(F2):
    g = lp('[[1,t^2+1,t],[0,1,t^3],[0,0,1]]', F2)
    gm, D, gp = birkhoff_factor(g)
    assert gm == ident(F2) and D == ident(F2) and gp == g


def test_birkhoff_diagonal_input(F2, F3):
    for F in (F2, F3):
        D0 = diagonal([2, -3, 1], F)
        gm, D, gp = birkhoff_factor(D0)
        assert gm == ident(F) and gp == ident(F) and D == D0
        assert diagonal_exponents(D) == [2, -3, 1]


def test_birkhoff_inverse_polynomial_input(F3):
    g = lp('[[1,0,0],[t^-2,1,0],[t^-1,2*t^-3,1]]', F3)
    gm, D, gp = birkhoff_factor(g, absorb='minus')
    assert gm == g and D == ident(F3) and gp == ident(F3)


@pytest.mark.parametrize('q', [2, 3])
def test_birkhoff_round_trip(q):
    F = get_field(q)
    rng = random.Random(100 + q)
    for _ in range(250):
        g = random_laurent_elementary(F, rng.randint(0, 12), rng)
        for absorb in ('plus', 'minus'):
            gm, D, gp = birkhoff_factor(g, absorb)
            assert gm * D * gp == g
            assert is_inverse_poly(gm) and is_poly(gp)
            assert sum(diagonal_exponents(D)) == 0


def test_birkhoff_bad_absorb(F2):
    with pytest.raises(InvalidArgument):
        birkhoff_factor(ident(F2), absorb='sideways')


def test_product_proxy(F2):
    rng = random.Random(4)
    for _ in range(30):
        g = random_word_element(F2, rng.randint(0, 15), rng)
        p = ProductProxy.of(g.to_laurent())
        assert p.spread_0 == 0 and p.total == proxy_dist(g)
    g = lp('[[t^-2,t^3,0],[0,t^2,0],[0,0,1]]', F2)
    assert ProductProxy.of(g).to_dict() == {'spread_inf': 3, 'spread_0': 2, 'total': 6}
    assert ProductProxy.of(g).total == ProductProxy.of(g.sigma()).total


def test_diag_fixtures(F2, F3):
    for F in (F2, F3):
        assert eval_word(diag_fixture(1, F), 3, F, LAURENT) == diagonal([1, -1, 0], F)
        assert eval_word(diag_fixture(2, F), 3, F, LAURENT) == diagonal([0, 1, -1], F)
        for exps in ([0, 0, 0], [3, -1, -2], [-2, 5, -3]):
            assert eval_word(diag_word(exps, F), 3, F, LAURENT) == diagonal(exps, F)
    with pytest.raises(InvalidArgument):
        diag_word([1, 1, 1], F2)


def test_sigma_word(F3):
    rng = random.Random(5)
    for _ in range(20):
        w = [rng.choice(laurent_generating_set(F3)) for _ in range(8)]
        assert eval_word(sigma_word(w), 3, F3, LAURENT) == eval_word(w, 3, F3, LAURENT).sigma()


def test_generating_set_is_symmetric(F2):
    S = laurent_generating_set(F2)
    keys = {eval_word([l], 3, F2, LAURENT).key() for l in S}
    assert len(keys) == len(S)
    assert all(eval_word([l], 3, F2, LAURENT).inverse().key() in keys for l in S)


def test_problem_validation(F2, F3):
    with pytest.raises(InvalidArgument):
        TwoPlaceProblem(GroupMatrix.identity(2, F2), GroupMatrix.identity(2, F2))
    with pytest.raises(InvalidArgument):
        TwoPlaceProblem(ident(F2), ident(F3))


def test_equal_endpoints(F2):
    g = random_laurent_elementary(F2, 5, random.Random(6))
    c = external_connect_s(g, g)
    assert c.length == 0 and c.verify()


def test_polynomial_target_reduces_to_one_place(F2):
    g2 = random_word_element(F2, 12, random.Random(7))
    c = external_connect_s(ident(F2), g2.to_laurent())
    assert c.verify()
    assert not any(s['stage'].startswith('minus') for s in c.stage_breakdown)
    assert c.word == external_connect(GroupMatrix.identity(3, F2), g2).word


@pytest.mark.parametrize('q', [2, 3])
def test_random_pairs_verify(q):
    F = get_field(q)
    rng = random.Random(200 + q)
    for _ in range(8):
        a = random_laurent_element(F, rng.randint(3, 10), rng)
        b = random_laurent_element(F, rng.randint(3, 10), rng)
        c = external_connect_s(a, b)
        assert c.verify()
        assert c.metric == 'product'
        assert eval_word(c.word, 3, F, LAURENT) == a.inverse() * b
        assert c.constants['length_ratio'] * ProductProxy.of(a.inverse() * b).total == c.length


def test_random_laurent_element_hits_target(F2):
    rng = random.Random(8)
    for target in (1, 4, 9):
        assert ProductProxy.of(random_laurent_element(F2, target, rng)).total == target
    with pytest.raises(InvalidArgument):
        random_laurent_element(F2, 0, rng)


def test_certificate_json_round_trip(F2):
    rng = random.Random(9)
    a, b = random_laurent_element(F2, 6, rng), random_laurent_element(F2, 6, rng)
    c = external_connect_s(a, b)
    d = json.loads(c.to_json())
    assert d['metric'] == 'product' and len(d['endpoint_spreads']) == 2
    back = TrajectoryCertificate.from_dict(d)
    assert back.word == c.word and back.verify()

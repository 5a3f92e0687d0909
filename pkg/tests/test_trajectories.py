import json
import random
from fractions import Fraction

import pytest

from fqdiv.algebra import Poly, get_field, parse_poly
from fqdiv.errors import PreconditionError
from fqdiv.matgroup import (GroupMatrix, cayley_ball_bfs, entry_deg, eval_word,
                            exact_divergence, generating_set, proxy_dist, walk, word_from_json)
from fqdiv.sol import unipotent_lower, unipotent_upper
from fqdiv.trajectories import (TrajectoryCertificate, connect_unipotent_right,
                                connect_unipotents, external_connect, fit_constants,
                                is_upper_unipotent, random_element, random_word_element,
                                reduce_to_unipotent)

# a fixed 10-letter word over S whose value has an eps-large (3,3) entry (q = 2)
TOOL_WORD = ('[{"kind":"elem","i":1,"j":2,"coeff":"t","inverse":false},'
             '{"kind":"elem","i":1,"j":3,"coeff":"1","inverse":false},'
             '{"kind":"elem","i":1,"j":3,"coeff":"1","inverse":false},'
             '{"kind":"elem","i":3,"j":2,"coeff":"t","inverse":false},'
             '{"kind":"elem","i":2,"j":1,"coeff":"t","inverse":false},'
             '{"kind":"elem","i":3,"j":1,"coeff":"t","inverse":false},'
             '{"kind":"elem","i":3,"j":1,"coeff":"1","inverse":false},'
             '{"kind":"block","i":1,"j":0,"block":2,"inverse":false},'
             '{"kind":"elem","i":2,"j":3,"coeff":"1","inverse":false},'
             '{"kind":"block","i":1,"j":0,"block":2,"inverse":false}]')


def upper(x, y, F):
    return unipotent_upper(parse_poly(x, F), parse_poly(y, F), F)


def check(cert):
    """Endpoint exactness plus an independent recomputation of the prefix minimum."""
    assert eval_word(cert.word, 3, cert.start.field) == cert.start.inverse() * cert.end
    low = min([proxy_dist(cert.start)] + [proxy_dist(g) for g in walk(cert.start, cert.word)])
    assert low == cert.min_prefix_proxy
    assert cert.verify()


# connect_unipotent_right -------------------------------------------------------------------
def test_tool_identity_theta(F2):
    alpha = eval_word(word_from_json(TOOL_WORD, F2), 3, F2)
    cert = connect_unipotent_right(alpha, Poly.zero(F2), Poly.zero(F2))
    assert cert.word == [] and cert.verify()


def test_tool_constant_theta(F2):
    alpha = eval_word(word_from_json(TOOL_WORD, F2), 3, F2)
    one = Poly.one(F2)
    cert = connect_unipotent_right(alpha, one, one)
    assert cert.length <= 2
    assert cert.min_prefix_proxy == proxy_dist(alpha)
    check(cert)


def test_tool_fixture(F2):
    alpha = eval_word(word_from_json(TOOL_WORD, F2), 3, F2)
    assert proxy_dist(alpha) == 5
    x, y = parse_poly('t^3+1', F2), parse_poly('t^2', F2)
    cert = connect_unipotent_right(alpha, x, y)
    assert cert.end == alpha * unipotent_lower(x, y, F2)
    check(cert)
    # regression fixture
    assert (cert.length, cert.min_prefix_proxy) == (19, 5)
    assert cert.min_prefix_proxy >= cert.constants['certified_bound']


def test_tool_column_invariant(F2):
    alpha = eval_word(word_from_json(TOOL_WORD, F2), 3, F2)
    cert = connect_unipotent_right(alpha, parse_poly('t^5+t', F2), parse_poly('t^4+1', F2))
    bound = cert.constants['certified_bound']
    path = list(walk(alpha, cert.word))
    for letter, prev, g in zip(cert.word, path, path[1:]):
        if letter.kind != 'block':
            assert g.column(2) == prev.column(2)
        assert 1 + max(entry_deg(e) for j in (1, 2) for e in g.column(j)) >= bound


def test_tool_precondition(F2):
    g = GroupMatrix.parse('[[1,0,0],[0,1,0],[t^5,0,1]]', F2)
    with pytest.raises(PreconditionError):
        connect_unipotent_right(g, Poly.one(F2), Poly.one(F2))


# reduce_to_unipotent -----------------------------------------------------------------------
def test_reduce_already_unipotent(F2):
    g = upper('t^3', 't', F2)
    end, cert = reduce_to_unipotent(g)
    assert end == g and cert.word == []


def test_reduce_e31(F2):
    g = GroupMatrix.parse('[[1,0,0],[0,1,0],[t^4,0,1]]', F2)
    end, cert = reduce_to_unipotent(g)
    assert is_upper_unipotent(end)
    check(cert)
    assert cert.end == end


@pytest.mark.parametrize('q', [2, 3])
def test_reduce_random_words(q):
    F = get_field(q)
    rng = random.Random(30 + q)
    ratios = []
    for _ in range(50):
        g = random_word_element(F, 30, rng)
        end, cert = reduce_to_unipotent(g)
        assert is_upper_unipotent(end)
        assert cert.verify()
        ratios.append(Fraction(proxy_dist(g), proxy_dist(end)))
    # fitted comparability constants c1 <= rho(g)/rho(g') <= c2
    assert Fraction(1, 10) <= min(ratios) and max(ratios) <= 10


# connect_unipotents ------------------------------------------------------------------------
def test_lamp_examples(F2):
    g = upper('t^6', '0', F2)
    assert connect_unipotents(g, g).word == []
    ident = GroupMatrix.identity(3, F2)
    cert = connect_unipotents(ident, upper('1', '0', F2))
    assert cert.length == 1 and cert.verify()


def test_lamp_fixture(F2):
    g, h = upper('t^6', '0', F2), upper('0', 't^6+t', F2)
    cert = connect_unipotents(g, h)
    check(cert)
    assert [s['stage'] for s in cert.stage_breakdown] == ['escape', 'lamp', 'return']
    assert (cert.length, cert.min_prefix_proxy) == (34, 7)
    assert cert.avoidance_ratio() == 1


# external_connect --------------------------------------------------------------------------
def test_external_connect_equal(F2):
    g = random_word_element(F2, 10, random.Random(1))
    cert = external_connect(g, g)
    assert cert.word == [] and cert.verify()


def test_external_connect_random_words(F2):
    rng = random.Random(20)
    certs = []
    for _ in range(10):
        a, b = random_word_element(F2, 20, rng), random_word_element(F2, 20, rng)
        cert = external_connect(a, b)
        check(cert)
        certs.append(cert)
    fitted = fit_constants(certs)
    assert fitted['delta1'] > 0
    for c in certs:
        d3 = Fraction(c.length, proxy_dist(c.start) + proxy_dist(c.end))
        assert d3 <= fitted['delta3']


def test_certificate_json_round_trip(F2):
    rng = random.Random(4)
    cert = external_connect(random_element(F2, 6, rng), random_element(F2, 6, rng))
    d = json.loads(cert.to_json())
    for key in ('start', 'end', 'word', 'length', 'min_prefix_proxy', 'endpoint_proxies',
                'stage_breakdown'):
        assert key in d
    assert all(set(s) == {'stage', 'length', 'min_proxy'} for s in d['stage_breakdown'])
    back = TrajectoryCertificate.from_json(cert.to_json())
    assert back.word == cert.word and back.verify()


def test_avoidance_and_linearity_small(F2):
    rng = random.Random(77)
    per_scale = {}
    for rho in (10, 20):
        certs = [external_connect(random_element(F2, rho, rng), random_element(F2, rho, rng))
                 for _ in range(8)]
        assert all(c.verify() for c in certs)
        per_scale[rho] = fit_constants(certs)
    d1 = [v['delta1'] for v in per_scale.values()]
    assert min(d1) > 0 and max(d1) / min(d1) <= 2


@pytest.mark.xfail(strict=True, reason='fixed reduction overhead makes tiny certified words '
                                       '15-50 times longer than exact avoiding paths')
def test_tiny_case_against_bfs(F2):
    ball = cayley_ball_bfs(4)
    rng = random.Random(9)
    ratios = []
    far = [i for i in range(len(ball)) if ball.dist[i] >= 3]
    while len(ratios) < 10:
        a, b = ball.keys[rng.choice(far)], ball.keys[rng.choice(far)]
        exact = exact_divergence(ball, a, b)
        if not isinstance(exact, int) or exact == 0:
            continue
        cert = external_connect(ball.matrix(ball.lookup(a)), ball.matrix(ball.lookup(b)))
        ratios.append(cert.length / exact)
    assert max(ratios) <= 10

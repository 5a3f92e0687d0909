import random
from fractions import Fraction

import pytest

from fqdiv.algebra import LaurentPoly, Poly, get_field, parse_poly
from fqdiv.errors import InvalidArgument, OutOfRange, PreconditionError, ResourceExhausted
from fqdiv.matgroup import (UNDETERMINED, GroupMatrix, bfs_length, cayley_ball_bfs,
                            decompose_elementary, decomposition_word, divergence_scan, elem,
                            elementary_product, eval_word, exact_divergence, expand_to_s0,
                            generating_set, invert_word, is_eps_large, letter_matrix, proxy_dist,
                            word_from_json, word_to_json)


def M(s, F):
    return GroupMatrix.parse(s, F)


def e(i, j, p, F):
    return eval_word([elem(i, j, parse_poly(p, F))], 3, F)


@pytest.fixture(scope='module')
def ball3():
    return cayley_ball_bfs(3)


# matrices and the proxy -----------------------------------------------------------------------
def test_det_checked(F2):
    with pytest.raises(InvalidArgument):
        M('[[t,0,0],[0,1,0],[0,0,1]]', F2)


def test_proxy_examples(F2, rng):
    assert proxy_dist(GroupMatrix.identity(3, F2)) == 1
    assert proxy_dist(e(1, 2, 't^3', F2)) == 4
    S = generating_set(3, F2)
    g = eval_word([S[rng.randrange(len(S))] for _ in range(20)], 3, F2)
    assert proxy_dist(g) <= 21


def test_eps_large_examples(F2):
    # over F_2: det [[t^10, t^20+1], [1, t^10]] = t^20 + t^20 + 1 = 1
    g = M('[[t^10,1+t^20,0],[1,t^10,0],[0,0,1]]', F2)
    assert is_eps_large(g, 0, 1)
    assert is_eps_large(g, 0, 0, Fraction(1, 2))
    assert not is_eps_large(g, 0, 0, Fraction(3, 5))
    assert not is_eps_large(g, 2, 0)
    assert is_eps_large(GroupMatrix.identity(3, F2), 1, 1, Fraction(9, 10))


# words ------------------------------------------------------------------------------------------
def test_eval_word_examples(F2):
    assert eval_word([], 3, F2).is_identity()
    t = LaurentPoly.monomial(F2, 1, 1)
    assert eval_word([elem(1, 2, t), elem(1, 2, t)], 3, F2).is_identity()
    comm = [elem(1, 3, t), elem(3, 2, t), elem(1, 3, t).inv(), elem(3, 2, t).inv()]
    assert eval_word(comm, 3, F2) == e(1, 2, 't^2', F2)


def test_eval_word_is_multiplicative(F3, rng):
    S = generating_set(3, F3)
    for _ in range(20):
        u = [S[rng.randrange(len(S))] for _ in range(rng.randint(0, 8))]
        v = [S[rng.randrange(len(S))] for _ in range(rng.randint(0, 8))]
        assert eval_word(u + v, 3, F3) == eval_word(u, 3, F3) * eval_word(v, 3, F3)
        assert eval_word(u + invert_word(u), 3, F3).is_identity()


def test_word_json_round_trip(F3, rng):
    S = generating_set(3, F3)
    w = [S[rng.randrange(len(S))] for _ in range(30)]
    assert word_from_json(word_to_json(w), F3) == w


def test_generating_set_is_symmetric(F2, F3):
    for F in (F2, F3):
        S = generating_set(3, F)
        keys = {letter_matrix(l, 3, F).key() for l in S}
        assert len(keys) == len(S)
        for l in S:
            assert letter_matrix(l, 3, F).inverse().key() in keys


# decomposition ---------------------------------------------------------------------------------
def test_decompose_examples(F2):
    g = e(2, 1, 't^5+1', F2)
    assert decompose_elementary(g) == [(2, 1, parse_poly('t^5+1', F2))]
    assert decompose_elementary(GroupMatrix.identity(3, F2)) == []


def test_decompose_round_trip_q3():
    F = get_field(3)
    rng = random.Random(3)
    for _ in range(40):
        facs = []
        for _ in range(15):
            i = rng.randint(1, 3)
            j = rng.choice([x for x in (1, 2, 3) if x != i])
            facs.append((i, j, parse_poly(f'{rng.randint(1, 2)}*t^{rng.randint(0, 3)}', F)))
        g = elementary_product(facs, 3, F)
        assert elementary_product(decompose_elementary(g), 3, F) == g
        assert eval_word(decomposition_word(g), 3, F) == g


def test_expand_to_s0_examples(F2, F3):
    assert len(expand_to_s0(1, 2, Poly.const(F3, 2), 3)) == 1
    assert len(expand_to_s0(1, 2, Poly.gen(F2), 3)) == 1
    w = expand_to_s0(1, 2, parse_poly('t^2', F2), 3)
    assert len(w) == 4
    assert eval_word(w, 3, F2) == e(1, 2, 't^2', F2)
    with pytest.raises(PreconditionError):
        expand_to_s0(1, 2, Poly.gen(F2), 2)


@pytest.mark.parametrize('deg', range(0, 9))
def test_expand_to_s0_evaluates(F3, deg):
    p = parse_poly(f'1+2*t^{deg}', F3) if deg else parse_poly('2', F3)
    assert eval_word(expand_to_s0(3, 1, p, 3), 3, F3) == elementary_product([(3, 1, p)], 3, F3)


# BFS oracles ----------------------------------------------------------------------------------
def test_ball_small_radii(F2):
    b0 = cayley_ball_bfs(0)
    assert len(b0) == 1 and b0.dist[0] == 0
    b1 = cayley_ball_bfs(1)
    assert len(b1) == 1 + len(generating_set(3, F2))


def test_ball_commutator_distance(ball3, F2):
    # outside the radius-3 ball, and the 4-letter commutator reaches it: d_S = 4
    assert e(1, 2, 't^2', F2) not in ball3
    assert len(expand_to_s0(1, 2, parse_poly('t^2', F2), 3)) == 4


def test_ball_memory_budget():
    with pytest.raises(ResourceExhausted) as exc:
        cayley_ball_bfs(4, budget=200_000)
    assert exc.value.radius is not None and exc.value.radius < 4


def test_divergence_trivial_cases(ball3, F2):
    a = ball3.keys[100]
    assert exact_divergence(ball3, a, a) == 0
    b = ball3.keys[2000]
    ia, ib = ball3.lookup(a), ball3.lookup(b)
    assert exact_divergence(ball3, a, b, delta=Fraction(0)) == bfs_length(ball3, ia, ib)


def test_divergence_outside_ball(ball3, F2):
    with pytest.raises(OutOfRange):
        exact_divergence(ball3, e(1, 2, 't^9', F2), ball3.keys[0])


def test_divergence_scan_rows(ball3):
    rows = divergence_scan(ball3, Fraction(1, 4), 1, pairs=10, seed=1, min_through=4)
    assert len(rows) == 10
    for r in rows:
        if r['div_length'] != UNDETERMINED and r['d_ab_exact']:
            assert r['div_length'] >= r['d_ab']

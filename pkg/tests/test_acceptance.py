"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even without
``-s``) or directly with ``python tests/test_acceptance.py``.  Each check
returns (ok, detail); runtime limits are part of the verdict.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from fqdiv.algebra import LaurentPoly, Poly, RationalFunc, get_field, random_poly
from fqdiv.building import LocalRingContext, LatticeClass, incidence, orbit, smith_valuations, \
    smith_valuations_minors
from fqdiv.matgroup import (UNDETERMINED, cayley_ball_bfs, decomposition_word, divergence_scan,
                            eval_word, proxy_constant)
from fqdiv.sarith import (birkhoff_factor, diagonal_exponents, external_connect_s,
                          random_laurent_element, random_laurent_elementary)
from fqdiv.sol import anchor, banach_eigen, cone_margin, cone_constants, eliminate_digits, \
    sol_engine, unipotent_lower
from fqdiv import sol
from fqdiv.trajectories import external_connect, fit_constants, random_element, \
    random_word_element
from fqdiv.valuations import Place, PlaceSet, degree_sum_check, is_s_integral

RESULTS = {}


def _stability(values):
    values = [Fraction(v) for v in values]
    return max(values) / min(values) if min(values) > 0 else None


def _fmt(x):
    return f'{float(x):.3f}' if x is not None else 'n/a'


# 1 -------------------------------------------------------------------------------------------
def check_eigen_residual():
    banach_eigen.cache_clear()
    sol._banach_a1.cache_clear()
    t0 = time.perf_counter()
    bad = []
    for q in (2, 3, 4):
        F = get_field(q)
        for K in (16, 32, 64):
            for i in (1, 2):
                e = banach_eigen(anchor(i, F), K)
                if e.residual_exponent > -K + 2 or e.lam_plus.val != -1 or e.lam_minus.val != 1:
                    bad.append((q, K, i))
    dt = time.perf_counter() - t0
    return not bad and dt < 1, f'18 cases, failures {bad}, {dt:.2f}s (limit 1s)'


# 2 -------------------------------------------------------------------------------------------
def check_contraction_rate():
    t0 = time.perf_counter()
    runs = {}
    for q in (2, 3, 4):
        drops = banach_eigen(anchor(1, get_field(q)), 64).contraction_drops()
        best = cur = 0
        for d in drops:
            cur = cur + 1 if d == 2 else 0
            best = max(best, cur)
        runs[q] = (best, len(drops), set(drops))
    dt = time.perf_counter() - t0
    ok = all(b >= 10 and s == {2} for b, _, s in runs.values()) and dt < 1
    detail = ', '.join(f'q={q}: {b}/{n} steps drop by 2' for q, (b, n, _) in runs.items())
    return ok, f'{detail}, {dt:.2f}s (limit 1s)'


# 3 -------------------------------------------------------------------------------------------
def check_decomposition():
    t0 = time.perf_counter()
    rng = random.Random(3)
    good = 0
    for k in range(500):
        F = get_field(2 if k % 2 else 3)
        g = random_word_element(F, rng.randint(0, 25), rng)
        good += eval_word(decomposition_word(g), 3, F) == g
    dt = time.perf_counter() - t0
    return good == 500 and dt < 30, f'{good}/500 exact, {dt:.1f}s (limit 30s)'


# 4 -------------------------------------------------------------------------------------------
def check_short_words():
    t0 = time.perf_counter()
    F = get_field(2)
    rng = random.Random(4)
    ratios = {}
    worst_slack = 0
    bad = 0
    for k in range(500):
        d = (4, 8, 16, 32)[k % 4]
        idx = 1 + (k // 4) % 2
        x, y = random_poly(F, d, rng), random_poly(F, d, rng)
        top = max(x.deg, y.deg, 0)
        slack = next((s for s in range(9)
                      if eliminate_digits(x, y, anchor(idx, F), top + s) is not None), None)
        if slack is None:
            bad += 1
            continue
        worst_slack = max(worst_slack, slack)
        eng = sol_engine(idx, F)
        digits = eliminate_digits(x, y, eng.anchor, top + slack)
        word = eng.word_from_digits(digits)
        if eval_word(word, 3, F) != unipotent_lower(x, y, F):
            bad += 1
            continue
        ratios.setdefault(d, []).append(Fraction(len(word), 1 + top))
    means = {d: sum(r) / len(r) for d, r in ratios.items()}
    spread = _stability(means.values())
    dt = time.perf_counter() - t0
    ok = bad == 0 and spread is not None and spread <= 3 and dt < 60
    return ok, (f'failures {bad}, max slack {worst_slack}, bucket mean ratios '
                f'{ {d: round(float(m), 2) for d, m in sorted(means.items())} }, '
                f'spread {_fmt(spread)} (limit 3), {dt:.1f}s (limit 60s)')


# 5 -------------------------------------------------------------------------------------------
def check_external_connection(pairs=200, scales=(10, 20, 40, 80)):
    t0 = time.perf_counter()
    F = get_field(2)
    fitted = {}
    bad = 0
    for rho in scales:
        rng = random.Random(5000 + rho)
        certs = []
        for _ in range(pairs):
            a, b = random_element(F, rho, rng), random_element(F, rho, rng)
            c = external_connect(a, b, Fraction(1, 2))
            bad += not (c.verify() and eval_word(c.word, 3, F) == a.inverse() * b)
            certs.append(c)
        fitted[rho] = fit_constants(certs)
    d1 = [f['delta1'] for f in fitted.values()]
    d3 = [f['delta3'] for f in fitted.values()]
    s1, s3 = _stability(d1), _stability(d3)
    dt = time.perf_counter() - t0
    ok = (bad == 0 and min(d1) > 0 and s1 is not None and s1 <= 2 and s3 is not None
          and s3 <= 3 and dt < 600)
    table = ', '.join(f'rho={r}: d1={_fmt(f["delta1"])} d3={_fmt(f["delta3"])}'
                      for r, f in fitted.items())
    return ok, (f'{bad} bad certificates; {table}; stability d1 {_fmt(s1)} (limit 2), '
                f'd3 {_fmt(s3)} (limit 3), {dt:.0f}s (limit 600s)')


# 6 -------------------------------------------------------------------------------------------
def check_divergence():
    t0 = time.perf_counter()
    ball = cayley_ball_bfs(4, 3, get_field(2))
    C = proxy_constant(ball)
    rows = divergence_scan(ball, Fraction(1, 4), 1, pairs=2000, seed=6, min_through=6)
    # pairs come with d(e, a) + d(e, b) >= 6; where d(a, b) is only the lower bound R + 1
    # the ratio test is stricter than with the exact distance
    undetermined = sum(r['div_length'] == UNDETERMINED for r in rows)
    det = [r for r in rows if r['div_length'] != UNDETERMINED]
    over = [r for r in det if r['div_length'] > 10 * r['d_ab']]
    counted = len(det)
    exact = sum(r['d_ab_exact'] for r in det)
    worst = max((Fraction(r['div_length'], r['d_ab']) for r in det if r['d_ab']), default=None)
    dt = time.perf_counter() - t0
    ok = C <= 30 and counted > 0 and not over and dt < 900
    return ok, (f'ball {len(ball)}, fitted C={C} (limit 30); {counted} of {len(rows)} pairs '
                f'determined ({exact} with exact d(a,b)), {undetermined} undetermined, '
                f'worst div/d {_fmt(worst)} (limit 10), '
                f'{dt:.1f}s (limit 900s)')


# 7 -------------------------------------------------------------------------------------------
def _rand_rat(F, rng):
    while True:
        n = random_poly(F, rng.randint(0, 8), rng)
        d = random_poly(F, rng.randint(0, 8), rng)
        if n and d:
            return RationalFunc(n, d)


def check_valuations():
    t0 = time.perf_counter()
    rng = random.Random(7)
    nonzero = 0
    for k in range(1000):
        F = get_field((2, 3, 4)[k % 3])
        nonzero += degree_sum_check(_rand_rat(F, rng)) != 0
    mismatch = 0
    for k in range(500):
        F = get_field((2, 3)[k % 2])
        x = _rand_rat(F, rng) if k % 4 < 2 else RationalFunc.from_poly(random_poly(F, 8, rng))
        is_poly = x.den.deg == 0
        mismatch += is_s_integral(x, PlaceSet([Place.infinite(F)])) != is_poly
    dt = time.perf_counter() - t0
    return (nonzero == 0 and mismatch == 0 and dt < 5,
            f'degree sum nonzero {nonzero}/1000, S-integrality mismatches {mismatch}/500, '
            f'{dt:.2f}s (limit 5s)')


# 8 -------------------------------------------------------------------------------------------
def check_building():
    t0 = time.perf_counter()
    rng = random.Random(8)
    F = get_field(2)
    ctx = LocalRingContext.infinite(F)
    std = LatticeClass.standard(3, ctx)
    smith_bad = 0
    for k in range(500):
        g = (random_laurent_elementary(F, rng.randint(1, 10), rng) if k % 2
             else random_word_element(F, rng.randint(1, 20), rng))
        smith_bad += smith_valuations(g, ctx) != smith_valuations_minors(g, ctx)
    inc_bad = 0
    for _ in range(100):
        x = orbit(random_laurent_elementary(F, 4, rng), std)
        y = orbit(random_laurent_elementary(F, 4, rng), std)
        inc_bad += not incidence(x, x) or incidence(x, y) != incidence(y, x)
    stab_bad = 0
    for _ in range(200):
        u = random_word_element(F, rng.randint(1, 20), rng).sigma()
        stab_bad += orbit(u, std) != std
    dt = time.perf_counter() - t0
    return (smith_bad == 0 and inc_bad == 0 and stab_bad == 0 and dt < 60,
            f'smith vs minors mismatches {smith_bad}/500, incidence violations {inc_bad}/100, '
            f'stabilizer misses {stab_bad}/200, {dt:.1f}s (limit 60s)')


# 9 -------------------------------------------------------------------------------------------
def check_two_place(pairs=100, scales=(10, 20, 40)):
    t0 = time.perf_counter()
    F = get_field(2)
    rng = random.Random(9)
    round_bad = 0
    for _ in range(500):
        g = random_laurent_elementary(F, rng.randint(0, 14), rng)
        gm, D, gp = birkhoff_factor(g)
        round_bad += not (gm * D * gp == g and sum(diagonal_exponents(D)) == 0)
    fitted = {}
    bad = 0
    for s in scales:
        rng = random.Random(9000 + s)
        certs = []
        for _ in range(pairs):
            a, b = random_laurent_element(F, s, rng), random_laurent_element(F, s, rng)
            c = external_connect_s(a, b)
            bad += not c.verify()
            certs.append(c)
        fitted[s] = fit_constants(certs)
    d1 = [f['delta1'] for f in fitted.values()]
    stab = _stability(d1)
    dt = time.perf_counter() - t0
    ok = round_bad == 0 and bad == 0 and min(d1) > 0 and stab is not None and stab <= 3 \
        and dt < 600
    table = ', '.join(f'spread {s}: avoidance {_fmt(f["delta1"])}' for s, f in fitted.items())
    return ok, (f'birkhoff failures {round_bad}/500, bad certificates {bad}; {table}; '
                f'stability {_fmt(stab)} (limit 3), {dt:.0f}s (limit 600s)')


# 10 ------------------------------------------------------------------------------------------
def _rand_vector(F, rng):
    """A pair of Laurent polynomials, each with nu_inf in [-5, 5] and up to 7 terms."""
    def one():
        top = rng.randint(-5, 5)
        span = rng.randint(0, 6)
        c = [rng.randrange(F.q) for _ in range(span + 1)]
        c[-1] = rng.randrange(1, F.q)
        return LaurentPoly(Poly(F, c), top - span)
    return one(), one()


def check_cone_covering():
    t0 = time.perf_counter()
    lines = []
    ok = True
    for q in (2, 3):
        F = get_field(q)
        rng = random.Random(10 + q)
        A = (anchor(1, F), anchor(2, F))
        vs = [_rand_vector(F, rng) for _ in range(200)]
        two = [max(cone_margin(v, a) for a in A) for v in vs]
        one = [max(cone_margin(v, a, kmin=0) for a in A) for v in vs]
        cov = {c: sum(Fraction(q) ** m > c for m in two) for c in cone_constants(q)}
        cov_one = {c: sum(Fraction(q) ** m > c for m in one) for c in cone_constants(q)}
        full = [c for c, n in cov.items() if n == 200]
        ok &= bool(full)
        lines.append(f'q={q}: two-sided coverage '
                     f'{ {str(c): n for c, n in cov.items()} } (min margin {min(two)}); '
                     f'one-sided k>=0 coverage { {str(c): n for c, n in cov_one.items()} }')
    dt = time.perf_counter() - t0
    ok &= dt < 30
    return ok, '; '.join(lines) + f', {dt:.1f}s (limit 30s)'


CRITERIA = [
    (1, 'eigenvalue residual', check_eigen_residual),
    (2, 'contraction rate', check_contraction_rate),
    (3, 'decomposition round trip', check_decomposition),
    (4, 'short unipotent words', check_short_words),
    (5, 'external connection suite', check_external_connection),
    (6, 'exact divergence cross-check', check_divergence),
    (7, 'valuations', check_valuations),
    (8, 'building', check_building),
    (9, 'two-place connector', check_two_place),
    (10, 'cone covering', check_cone_covering),
]

# measured failures, kept at full tolerance and reported as FAIL
KNOWN_FAILURES = {
    10: 'for q = 2 a few vectors have two-sided margin down to -4 on both anchors, below every '
        'scanned constant; one-sided coverage is complete',
}


def run_criterion(num, name, fn):
    ok, detail = fn()
    line = f'{"PASS" if ok else "FAIL"} criterion {num} ({name}): {detail}'
    RESULTS[num] = ok
    return ok, line


def _params():
    for num, name, fn in CRITERIA:
        marks = []
        if num in KNOWN_FAILURES:
            marks.append(pytest.mark.xfail(reason=KNOWN_FAILURES[num], strict=True))
        yield pytest.param(num, name, fn, id=f'criterion{num}', marks=marks)


@pytest.mark.parametrize('num,name,fn', list(_params()))
def test_criterion(num, name, fn, capsys):
    ok, line = run_criterion(num, name, fn)
    with capsys.disabled():
        print('\n' + line)
    assert ok, line


if __name__ == '__main__':
    all_ok = True
    for num, name, fn in CRITERIA:
        ok, line = run_criterion(num, name, fn)
        print(line, flush=True)
        all_ok &= ok
    sys.exit(0 if all_ok else 1)

"""A quick property sweep over every module (the ``selftest`` subcommand).

Each check runs a handful of seeded random cases and reports one line.
The full suites live in the test directory; this is the installed-package
smoke test.
"""

import random
import sys
import time
import traceback


def _check_factor(rng):
    from .algebra import Poly, factor, get_field, random_poly
    for q in (2, 3, 4):
        F = get_field(q)
        for _ in range(10):
            f = random_poly(F, rng.randint(1, 12), rng, monic=True)
            if not f:
                continue
            prod = Poly.one(F)
            for P, e in factor(f):
                prod = prod * P ** e
            if prod != f:
                return False
    return True


def _check_eigen(rng):
    from .algebra import get_field
    from .sol import anchor, banach_eigen
    for q in (2, 3, 4):
        F = get_field(q)
        for i in (1, 2):
            e = banach_eigen(anchor(i, F), 32)
            if e.lam_plus.val != -1 or e.lam_minus.val != 1 or e.residual_exponent > -32 + 2:
                return False
    return True


def _check_decompose(rng):
    from .algebra import get_field
    from .matgroup import decomposition_word, eval_word
    from .trajectories import random_word_element
    for q in (2, 3):
        F = get_field(q)
        for _ in range(10):
            g = random_word_element(F, rng.randint(0, 15), rng)
            if eval_word(decomposition_word(g), 3, F) != g:
                return False
    return True


def _check_unipotent(rng):
    from .algebra import get_field, random_poly
    from .matgroup import eval_word
    from .sol import short_unipotent_word, unipotent_lower
    F = get_field(2)
    for _ in range(10):
        x, y = random_poly(F, 8, rng), random_poly(F, 8, rng)
        for i in (1, 2):
            if eval_word(short_unipotent_word(x, y, i, F), 3, F) != unipotent_lower(x, y, F):
                return False
    return True


def _check_connect(rng):
    from .algebra import get_field
    from .trajectories import external_connect, random_element
    F = get_field(2)
    for _ in range(3):
        c = external_connect(random_element(F, 8, rng), random_element(F, 8, rng))
        if not c.verify():
            return False
    return True


def _check_valuations(rng):
    from .algebra import RationalFunc, get_field, random_poly
    from .valuations import degree_sum_check
    for q in (2, 3):
        F = get_field(q)
        for _ in range(20):
            n, d = random_poly(F, 6, rng), random_poly(F, 6, rng)
            if n and d and degree_sum_check(RationalFunc(n, d)) != 0:
                return False
    return True


def _check_building(rng):
    from .building import LocalRingContext, smith_valuations, smith_valuations_minors
    from .algebra import get_field
    from .trajectories import random_word_element
    F = get_field(2)
    ctx = LocalRingContext.infinite(F)
    for _ in range(10):
        g = random_word_element(F, rng.randint(1, 8), rng)
        if smith_valuations(g, ctx) != smith_valuations_minors(g, ctx):
            return False
    return True


def _check_two_place(rng):
    from .algebra import get_field
    from .sarith import birkhoff_factor, external_connect_s, random_laurent_elementary
    F = get_field(2)
    for _ in range(10):
        g = random_laurent_elementary(F, 10, rng)
        gm, D, gp = birkhoff_factor(g)
        if gm * D * gp != g:
            return False
    a, b = random_laurent_elementary(F, 6, rng), random_laurent_elementary(F, 6, rng)
    return external_connect_s(a, b).verify()


CHECKS = [
    ('factorization round trip', _check_factor),
    ('anchor eigenvalues', _check_eigen),
    ('decomposition round trip', _check_decompose),
    ('short unipotent words', _check_unipotent),
    ('external connection certificates', _check_connect),
    ('degree-sum formula', _check_valuations),
    ('smith valuations vs minors', _check_building),
    ('two-place factorization and connector', _check_two_place),
]


def run_selftest(seed=0, out=None):
    out = out or sys.stdout
    ok = True
    for name, fn in CHECKS:
        rng = random.Random(seed)
        t0 = time.perf_counter()
        try:
            good = fn(rng)
            err = ''
        except Exception:
            good = False
            err = traceback.format_exc(limit=2).strip().splitlines()[-1]
        ok &= good
        status = 'PASS' if good else 'FAIL'
        out.write(f'{status} {name} ({time.perf_counter() - t0:.2f}s){" " + err if err else ""}\n')
    return ok

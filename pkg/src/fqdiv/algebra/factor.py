"""Factorization of polynomials over F_q.

Squarefree decomposition, then distinct-degree splitting, then randomized
equal-degree splitting (Cantor-Zassenhaus; the trace map in characteristic
2).  Inputs of degree <= 6 are split by exhaustive divisor search instead,
which is deterministic and cheap at that size.
"""

import itertools
import random

from ..errors import InvalidArgument
from .poly import Poly, poly_gcd

SMALL_DEGREE = 6


def powmod(a, e, f):
    """a**e mod f."""
    r = Poly.one(a.field)
    a = a % f
    while e:
        if e & 1:
            r = r * a % f
        a = a * a % f
        e >>= 1
    return r


def squarefree_decomposition(f):
    """Monic f = prod g_i**i with g_i squarefree and pairwise coprime.

    Returns [(g, i), ...] with g != 1.
    """
    F = f.field
    p = F.p
    f = f.monic()
    out = []
    if f.deg < 1:
        return out
    g = f.derivative()
    if not g:
        for h, e in squarefree_decomposition(f.frobenius_root()):
            out.append((h, e * p))
        return out
    c = poly_gcd(f, g)
    w = f // c
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        z = w // y
        if not z.is_one():
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if not c.is_one():
        for h, e in squarefree_decomposition(c.monic().frobenius_root()):
            out.append((h, e * p))
    return out


def distinct_degree(f):
    """Split a monic squarefree f into [(product of its degree-d factors, d)]."""
    F = f.field
    q = F.q
    t = Poly.gen(F)
    out = []
    h = t % f if f.deg > 0 else t
    d = 0
    while f.deg >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, f)
        g = poly_gcd(h - t, f)
        if not g.is_one():
            out.append((g, d))
            f = f // g
            h = h % f
    if f.deg > 0:
        out.append((f.monic(), f.deg))
    return out


def _trace_map(a, f, m):
    # a + a^2 + a^4 + ... + a^(2^(m-1)) mod f
    s = a % f
    b = s
    for _ in range(m - 1):
        b = b * b % f
        s = s + b
    return s


def equal_degree(f, d, rng):
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    F = f.field
    if f.deg == d:
        return [f]
    if f.deg < d or f.deg % d:
        raise InvalidArgument('equal-degree splitting on inconsistent input')
    q = F.q
    while True:
        a = Poly(F, [rng.randrange(q) for _ in range(f.deg)])
        if a.deg < 1:
            continue
        if F.p == 2:
            b = _trace_map(a, f, F.k * d)
        else:
            b = powmod(a, (q ** d - 1) // 2, f) - 1
        g = poly_gcd(b, f)
        if 0 < g.deg < f.deg:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def _monic_of_degree(F, d):
    for tail in itertools.product(F.elements, repeat=d):
        yield Poly(F, tuple(reversed(tail)) + (1,))


def _exhaustive_split(f):
    # repeatedly peel the smallest monic divisor
    F = f.field
    out = []
    f = f.monic()
    while f.deg > 0:
        for d in range(1, f.deg // 2 + 1):
            found = None
            for g in _monic_of_degree(F, d):
                if g.divides(f):
                    found = g
                    break
            if found is not None:
                break
        else:
            found = f
        out.append(found)
        f = f // found
    return out


def factor(f, rng=None):
    """Irreducible factorization of a nonzero polynomial.

    Returns a list of (monic irreducible, multiplicity) sorted by degree then
    coefficients; the leading coefficient of f is not included.
    """
    if not f:
        raise InvalidArgument('cannot factor the zero polynomial')
    if f.deg < 1:
        return []
    counts = {}
    if f.deg <= SMALL_DEGREE:
        for g in _exhaustive_split(f):
            counts[g] = counts.get(g, 0) + 1
    else:
        rng = rng or random.Random(0x5eed)
        for g, e in squarefree_decomposition(f):
            for h, d in distinct_degree(g):
                for irr in equal_degree(h, d, rng):
                    counts[irr.monic()] = counts.get(irr.monic(), 0) + e
    return sorted(counts.items(), key=lambda it: it[0].sort_key())


def distinct_prime_divisors(f):
    return [g for g, _ in factor(f)]


def is_irreducible(f):
    """Rabin's test."""
    if f.deg < 1:
        return False
    if f.deg == 1:
        return True
    F = f.field
    f = f.monic()
    n = f.deg
    t = Poly.gen(F)

    def frob(k):
        return powmod(t, F.q ** k, f)

    if frob(n) != t % f:
        return False
    for r in _prime_factors(n):
        if not poly_gcd(frob(n // r) - t, f).is_one():
            return False
    return True


def is_irreducible_trial(f):
    """Trial division by every monic polynomial of degree <= deg f / 2."""
    if f.deg < 1:
        return False
    for d in range(1, f.deg // 2 + 1):
        for g in _monic_of_degree(f.field, d):
            if g.divides(f):
                return False
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out

"""Exact arithmetic over F_q, F_q[t], F_q(t), F_q[t, 1/t] and F_q((1/t))."""

from .factor import factor, distinct_prime_divisors, is_irreducible, is_irreducible_trial
from .field import GF, FieldElem, get_field
from .linalg import solve_gf
from .poly import BinPoly, Poly, parse_poly, poly_gcd, poly_gcdext, random_poly
from .rational import LaurentPoly, RationalFunc, parse_laurent, parse_rational
from .series import DEFAULT_PRECISION, LaurentSeries, embed


def series_invert(x):
    """Inverse of a truncated series (``x.inverse()``)."""
    return x.inverse()


__all__ = [
    'GF', 'FieldElem', 'get_field', 'Poly', 'BinPoly', 'parse_poly', 'poly_gcd', 'poly_gcdext',
    'random_poly', 'factor', 'distinct_prime_divisors', 'is_irreducible', 'is_irreducible_trial',
    'RationalFunc', 'LaurentPoly', 'parse_laurent', 'parse_rational', 'LaurentSeries', 'embed',
    'series_invert', 'DEFAULT_PRECISION', 'solve_gf',
]

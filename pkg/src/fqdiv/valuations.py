"""Places of F_q(t), their valuations, and S-integrality.

A place is either the infinite place (nu_inf(a/b) = deg b - deg a) or a
finite place given by a monic irreducible polynomial P, where nu_P(x) is
the exponent of P in x.  Zero has valuation ``math.inf`` everywhere.
"""

import math

from .algebra import RationalFunc, LaurentPoly, Poly, factor, get_field, is_irreducible, parse_poly
from .errors import InvalidArgument

INF = math.inf


class Place:
    """The infinite place (``poly is None``) or the place of a monic irreducible P."""

    __slots__ = ('field', 'poly')

    def __init__(self, field, poly=None):
        if poly is not None:
            if poly.field != field:
                raise InvalidArgument('place polynomial over a different field')
            if poly.deg < 1 or poly.lc != 1 or not is_irreducible(poly):
                raise InvalidArgument(f'{poly} is not monic irreducible')
        self.field = field
        self.poly = poly

    @classmethod
    def infinite(cls, field):
        return cls(field, None)

    @classmethod
    def at(cls, poly):
        return cls(poly.field, poly)

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self):
        """Degree of the residue field over F_q."""
        return 1 if self.poly is None else self.poly.deg

    def __eq__(self, other):
        return isinstance(other, Place) and self.field == other.field and self.poly == other.poly

    def __hash__(self):
        return hash(('place', self.poly))

    def __str__(self):
        return 'inf' if self.poly is None else str(self.poly)

    def __repr__(self):
        return f'Place({self})'


def parse_place(s, field):
    if isinstance(field, int):
        field = get_field(field)
    s = s.strip()
    if s in ('inf', 'infinity', 'oo'):
        return Place.infinite(field)
    return Place(field, parse_poly(s, field))


class PlaceSet:
    """A finite set of distinct places (the set S)."""

    def __init__(self, places):
        places = list(places)
        if len(set(places)) != len(places):
            raise InvalidArgument('duplicate places in S')
        fields = {p.field for p in places}
        if len(fields) > 1:
            raise InvalidArgument('places over different fields')
        self.places = tuple(places)

    def __contains__(self, place):
        return place in self.places

    def __iter__(self):
        return iter(self.places)

    def __len__(self):
        return len(self.places)

    @property
    def has_infinite(self):
        return any(p.is_infinite for p in self.places)

    def __str__(self):
        return '{' + ', '.join(str(p) for p in self.places) + '}'


def _as_rational(x):
    if isinstance(x, RationalFunc):
        return x
    if isinstance(x, Poly):
        return RationalFunc.from_poly(x)
    if isinstance(x, LaurentPoly):
        return x.to_rational()
    raise InvalidArgument(f'cannot take the valuation of {type(x).__name__}')


def _order(p, P):
    # exponent of P in the nonzero polynomial p
    n = 0
    while True:
        qt, r = divmod(p, P)
        if r:
            return n
        p = qt
        n += 1


def valuation_at(x, place):
    """nu_place(x) as an int, or math.inf for x = 0."""
    x = _as_rational(x)
    if not x.num:
        return INF
    if place.is_infinite:
        return x.den.deg - x.num.deg
    return _order(x.num, place.poly) - _order(x.den, place.poly)


def is_s_integral(x, S):
    """True iff nu_v(x) >= 0 at every place v outside S."""
    x = _as_rational(x)
    if not x.num:
        return True
    if not S.has_infinite and x.num.deg > x.den.deg:
        return False
    if x.den.deg < 1:
        return True
    for P, _ in factor(x.den):
        if Place(x.field, P) not in S:
            return False
    return True


def degree_sum_check(x):
    """sum_P deg(P) nu_P(x) + nu_inf(x); identically 0 for nonzero x."""
    x = _as_rational(x)
    if not x.num:
        raise InvalidArgument('degree sum of zero is undefined')
    total = x.den.deg - x.num.deg
    for part, sign in ((x.num, 1), (x.den, -1)):
        if part.deg > 0:
            for P, e in factor(part):
                total += sign * P.deg * e
    return total

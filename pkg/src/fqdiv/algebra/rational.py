"""Rational functions in F_q(t) and Laurent polynomials in F_q[t, 1/t]."""

from ..errors import InvalidArgument
from .field import FieldElem, get_field
from .poly import Poly, format_terms, parse_terms, poly_gcd


class RationalFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ('num', 'den')

    def __init__(self, num, den=None, normalized=False):
        if den is None:
            den = Poly.one(num.field)
        if not den:
            raise ZeroDivisionError('rational function with zero denominator')
        if not normalized:
            if not num:
                den = Poly.one(num.field)
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num, den = num // g, den // g
                c = den.lc
                if c != 1:
                    inv = num.field.inv(c)
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def from_poly(cls, p):
        return cls(p, Poly.one(p.field), normalized=True)

    def _coerce(self, b):
        if isinstance(b, RationalFunc):
            return b
        if isinstance(b, Poly):
            return RationalFunc.from_poly(b)
        if isinstance(b, LaurentPoly):
            return b.to_rational()
        if isinstance(b, (int, FieldElem)):
            return RationalFunc.from_poly(Poly(self.field, ()) + b)
        return NotImplemented

    def __add__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        if self.den == b.den:
            return RationalFunc(self.num + b.num, self.den)
        return RationalFunc(self.num * b.den + b.num * self.den, self.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den, normalized=True)

    def __sub__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self + (-b)

    def __rsub__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return b + (-self)

    def __mul__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return RationalFunc(self.num * b.num, self.den * b.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError('inverse of zero rational function')
        return RationalFunc(self.den, self.num)

    def __truediv__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self * b.inverse()

    def __rtruediv__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return b * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunc(self.num ** e, self.den ** e, normalized=True)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_poly(self):
        return self.den.is_one()

    def val_inf(self):
        """deg den - deg num; None for zero (callers map it to infinity)."""
        if not self.num:
            return None
        return self.den.deg - self.num.deg

    def __eq__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self.num == b.num and self.den == b.den

    def __hash__(self):
        if self.den.is_one():
            return hash(self.num)
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f'({self.num})/({self.den})'

    def __repr__(self):
        return f'RationalFunc({self}, q={self.field.q})'


class LaurentPoly:
    """t**shift * poly with poly(0) != 0 (or the zero element)."""

    __slots__ = ('shift', 'poly')

    def __init__(self, poly, shift=0, normalized=False):
        if not normalized:
            if not poly:
                shift = 0
            else:
                lo = poly.low
                if lo:
                    poly = poly.div_t(lo)
                    shift += lo
        self.poly = poly
        self.shift = shift

    @property
    def field(self):
        return self.poly.field

    def is_one(self):
        return self.shift == 0 and self.poly.is_one()

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @classmethod
    def monomial(cls, field, a, k):
        return cls(Poly.const(field, a), k, normalized=bool(a))

    @classmethod
    def zero(cls, field):
        return cls(Poly.zero(field), 0, normalized=True)

    @classmethod
    def one(cls, field):
        return cls(Poly.one(field), 0, normalized=True)

    def _coerce(self, b):
        if isinstance(b, LaurentPoly):
            return b
        if isinstance(b, Poly):
            return LaurentPoly(b)
        if isinstance(b, (int, FieldElem)):
            return LaurentPoly(Poly(self.field, ()) + b)
        return NotImplemented

    @property
    def deg(self):
        """Top exponent; None for zero."""
        return self.shift + self.poly.deg if self.poly else None

    @property
    def low(self):
        """Bottom exponent (the t-adic valuation); None for zero."""
        return self.shift if self.poly else None

    @property
    def lc(self):
        return self.poly.lc

    def coefficient(self, e):
        return self.poly[e - self.shift]

    def terms(self):
        return [(e + self.shift, a) for e, a in self.poly.terms()]

    def __add__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        if not self.poly:
            return b
        if not b.poly:
            return self
        s = min(self.shift, b.shift)
        return LaurentPoly(self.poly.shift(self.shift - s) + b.poly.shift(b.shift - s), s)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.poly, self.shift, normalized=True)

    def __sub__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self + (-b)

    def __rsub__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return b + (-self)

    def __mul__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        if not self.poly or not b.poly:
            return LaurentPoly.zero(self.field)
        return LaurentPoly(self.poly * b.poly, self.shift + b.shift, normalized=True)

    __rmul__ = __mul__

    def scale(self, a):
        return LaurentPoly(self.poly.scale(a), self.shift)

    def shifted(self, k):
        """Multiply by t**k, any integer k."""
        if not self.poly:
            return self
        return LaurentPoly(self.poly, self.shift + k, normalized=True)

    def is_unit(self):
        return self.poly.is_const() and bool(self.poly)

    def inverse(self):
        if not self.is_unit():
            raise InvalidArgument(f'{self} is not a unit of F_q[t, 1/t]')
        return LaurentPoly(Poly.const(self.field, self.field.inv(self.poly.lc)), -self.shift,
                           normalized=True)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return LaurentPoly(self.poly ** e, self.shift * e, normalized=True)

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self):
        return not self.poly

    def is_poly(self):
        return not self.poly or self.shift >= 0

    def is_inv_poly(self):
        """True iff the element lies in F_q[1/t]."""
        return not self.poly or self.deg <= 0

    def to_poly(self):
        if not self.is_poly():
            raise InvalidArgument(f'{self} has negative powers of t')
        return self.poly.shift(self.shift)

    def to_rational(self):
        if self.shift >= 0:
            return RationalFunc.from_poly(self.poly.shift(self.shift))
        return RationalFunc(self.poly, Poly.monomial(self.field, 1, -self.shift))

    def sigma(self):
        """Image under the ring involution t -> 1/t."""
        if not self.poly:
            return self
        return LaurentPoly(self.poly.reverse(), -self.shift - self.poly.deg, normalized=True)

    def __eq__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self.shift == b.shift and self.poly == b.poly

    def __hash__(self):
        if self.shift == 0:
            return hash(self.poly)
        return hash((self.shift, self.poly))

    def __str__(self):
        return format_terms(self.terms())

    def __repr__(self):
        return f'LaurentPoly({self}, q={self.field.q})'


def parse_laurent(s, field):
    if isinstance(field, int):
        field = get_field(field)
    terms = parse_terms(s, field)
    if not terms:
        return LaurentPoly.zero(field)
    lo = min(terms)
    c = [0] * (max(terms) - lo + 1)
    for e, a in terms.items():
        c[e - lo] = a
    return LaurentPoly(Poly(field, c), lo)


def parse_rational(s, field):
    """'num' or '(num)/(den)' with Laurent polynomial strings (negative powers allowed)."""
    if isinstance(field, int):
        field = get_field(field)
    s = s.strip()
    if '/' in s:
        a, b = s.split('/', 1)
        den = parse_laurent(b.strip().strip('()'), field)
        if den.is_zero():
            raise ZeroDivisionError('rational function with zero denominator')
        return parse_laurent(a.strip().strip('()'), field).to_rational() / den.to_rational()
    return parse_laurent(s, field).to_rational()

"""Truncated Laurent series in F_q((1/t)).

A series is stored from its exact valuation v = nu_inf(x): coefficients
c_v, c_{v+1}, ... of t^-v, t^-(v+1), ... are known through the absolute
power t^-prec.  The stored leading coefficient is nonzero; a series with
no known nonzero coefficient is the zero series at that precision.
Results whose leading term is not determined raise PrecisionExhausted.
"""

import numpy as np

from ..errors import InvalidArgument, PrecisionExhausted
from .poly import Poly

DEFAULT_PRECISION = 64


def _series_mul(a, b, n, F):
    # first n coefficients of the product of coefficient lists a and b
    a, b = a[:n], b[:n]
    if not a or not b:
        return [0] * n
    if F.k == 1:
        r = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))[:n] % F.p
        out = r.tolist()
        return out + [0] * (n - len(out))
    r = [0] * n
    mt, at = F.mul_t, F.add_t
    for i, x in enumerate(a):
        if x:
            row = mt[x]
            for j, y in enumerate(b[:n - i]):
                r[i + j] = at[r[i + j]][row[y]]
    return r


def _series_inv(a, n, F):
    # first n coefficients of 1/a for a power series with a[0] != 0
    inv0 = F.inv(a[0])
    if F.k == 1:
        # Newton: x <- x (2 - a x), doubling the number of correct terms
        p = F.p
        x = [inv0]
        m = 1
        while m < n:
            m = min(2 * m, n)
            ax = _series_mul(a, x, m, F)
            corr = [(-c) % p for c in ax]
            corr[0] = (corr[0] + 2) % p
            x = _series_mul(x, corr, m, F)
        return x + [0] * (n - len(x))
    out = [inv0] + [0] * (n - 1)
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            s = F.add(s, F.mul(a[j], out[k - j]))
        out[k] = F.mul(F.neg(s), inv0)
    return out


class LaurentSeries:
    """Element of F_q((1/t)) known modulo t^-(prec+1)."""

    __slots__ = ('field', 'val', 'coeffs', 'prec')

    def __init__(self, field, val, coeffs, prec):
        coeffs = list(coeffs[:max(0, prec - val + 1)])
        lead = 0
        while lead < len(coeffs) and not coeffs[lead]:
            lead += 1
        self.field = field
        if lead == len(coeffs):
            self.val = prec + 1
            self.coeffs = ()
        else:
            self.val = val + lead
            self.coeffs = tuple(coeffs[lead:])
        self.prec = prec

    # constructors -----------------------------------------------------------------
    @classmethod
    def zero(cls, field, prec=DEFAULT_PRECISION):
        return cls(field, prec + 1, (), prec)

    @classmethod
    def from_poly(cls, p, prec=DEFAULT_PRECISION):
        """Exact image of a polynomial, truncated at t^-prec."""
        if not p:
            return cls.zero(p.field, prec)
        return cls(p.field, -p.deg, tuple(reversed(p.coeffs)), prec)

    @classmethod
    def from_laurent(cls, x, prec=DEFAULT_PRECISION):
        if not x:
            return cls.zero(x.field, prec)
        return cls(x.field, -x.deg, tuple(reversed(x.poly.coeffs)), prec)

    @classmethod
    def monomial(cls, field, a, k, prec=DEFAULT_PRECISION):
        """a * t**k."""
        return cls(field, -k, (a,), prec)

    # inspection ---------------------------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def valuation(self):
        """nu_inf; raises PrecisionExhausted when indistinguishable from zero."""
        if not self.coeffs:
            raise PrecisionExhausted(f'series is zero through t^-{self.prec}')
        return self.val

    def norm_exponent(self):
        """log_q |x| = -nu_inf(x)."""
        return -self.valuation()

    def coefficient(self, i):
        """Coefficient of t^-i (i <= prec)."""
        if i > self.prec:
            raise PrecisionExhausted(f'coefficient of t^-{i} beyond precision {self.prec}')
        k = i - self.val
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def terms(self):
        """[(i, c_i)] for the known nonzero coefficients of t^-i."""
        return [(self.val + k, c) for k, c in enumerate(self.coeffs) if c]

    def truncate(self, prec):
        return LaurentSeries(self.field, self.val, self.coeffs, min(prec, self.prec))

    # arithmetic -----------------------------------------------------------------------
    def _coerce(self, b):
        if isinstance(b, LaurentSeries):
            if b.field != self.field:
                raise InvalidArgument('series over different fields')
            return b
        if isinstance(b, Poly):
            return LaurentSeries.from_poly(b, self.prec)
        if isinstance(b, int):
            return LaurentSeries.from_poly(Poly.const(self.field, self.field.from_int(b)), self.prec)
        from .rational import LaurentPoly, RationalFunc
        if isinstance(b, LaurentPoly):
            return LaurentSeries.from_laurent(b, self.prec)
        if isinstance(b, RationalFunc):
            return embed(b, self.prec)
        return NotImplemented

    def __add__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        F = self.field
        prec = min(self.prec, b.prec)
        v = min(self.val, b.val)
        n = prec - v + 1
        if n <= 0:
            return LaurentSeries.zero(F, prec)
        out = [0] * n
        if F.k == 1:
            p = F.p
            for s in (self, b):
                off = s.val - v
                seg = s.coeffs[:max(0, n - off)]
                out[off:off + len(seg)] = [(x + y) % p for x, y in
                                           zip(out[off:off + len(seg)], seg)]
            return LaurentSeries(F, v, out, prec)
        for s in (self, b):
            off = s.val - v
            for k, c in enumerate(s.coeffs[:max(0, n - off)]):
                out[off + k] = F.add(out[off + k], c)
        return LaurentSeries(F, v, out, prec)

    __radd__ = __add__

    def __neg__(self):
        ng = self.field.neg_t
        return LaurentSeries(self.field, self.val, [ng[c] for c in self.coeffs], self.prec)

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
        F = self.field
        if not self.coeffs or not b.coeffs:
            # zero times anything: error term only
            lo_a = self.val if not self.coeffs else self.val
            lo_b = b.val if not b.coeffs else b.val
            return LaurentSeries.zero(F, lo_a + lo_b - 1)
        v = self.val + b.val
        r = min(self.prec - self.val, b.prec - b.val)
        return LaurentSeries(F, v, _series_mul(self.coeffs, b.coeffs, r + 1, F), v + r)

    __rmul__ = __mul__

    def scale(self, a):
        """Multiply by the field element with code a."""
        F = self.field
        return LaurentSeries(F, self.val, [F.mul(a, c) for c in self.coeffs], self.prec)

    def inverse(self):
        if not self.coeffs:
            raise PrecisionExhausted(f'cannot invert a series that is zero through t^-{self.prec}')
        r = self.prec - self.val
        v = -self.val
        return LaurentSeries(self.field, v, _series_inv(self.coeffs, r + 1, self.field), v + r)

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
        r = LaurentSeries.from_poly(Poly.one(self.field), self.prec + e * max(0, -self.val))
        a = self
        while e:
            if e & 1:
                r = r * a
            a = a * a
            e >>= 1
        return r

    # comparison -----------------------------------------------------------------------
    def agrees(self, b, prec=None):
        """True iff self - b vanishes through t^-prec (default: joint precision)."""
        d = self - self._coerce(b)
        if prec is None:
            prec = d.prec
        if prec > d.prec:
            raise PrecisionExhausted(f'comparison through t^-{prec} beyond precision {d.prec}')
        return d.val > prec

    def __eq__(self, b):
        if not isinstance(b, LaurentSeries):
            return NotImplemented
        return (self.field == b.field and self.val == b.val and self.coeffs == b.coeffs
                and self.prec == b.prec)

    def __hash__(self):
        return hash((self.val, self.coeffs, self.prec))

    def __str__(self):
        if not self.coeffs:
            return f'O(t^-{self.prec + 1})'
        parts = []
        for i, c in self.terms():
            e = -i
            mono = '1' if e == 0 else ('t' if e == 1 else f't^{e}')
            if e == 0:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f'{c}*{mono}')
        return '+'.join(parts) + f'+O(t^-{self.prec + 1})'

    def __repr__(self):
        return f'LaurentSeries({self}, q={self.field.q})'


def embed(x, prec=DEFAULT_PRECISION):
    """Image of a rational function in F_q((1/t)), known through t^-prec."""
    from .rational import LaurentPoly, RationalFunc
    if isinstance(x, Poly):
        return LaurentSeries.from_poly(x, prec)
    if isinstance(x, LaurentPoly):
        return LaurentSeries.from_laurent(x, prec)
    if not isinstance(x, RationalFunc):
        raise InvalidArgument(f'cannot embed {type(x).__name__}')
    F = x.field
    if not x.num:
        return LaurentSeries.zero(F, prec)
    v = x.den.deg - x.num.deg
    n = prec - v + 1
    if n <= 0:
        return LaurentSeries.zero(F, prec)
    a = list(reversed(x.num.coeffs))
    b = list(reversed(x.den.coeffs))
    return LaurentSeries(F, v, _series_mul(a, _series_inv(b, n, F), n, F), prec)

"""Polynomials over F_q in one variable t.

``Poly`` stores its coefficients as a tuple of field codes in ascending
powers of t; the last entry is nonzero, the zero polynomial is ``()``.
Over F_2 the factory ``Poly.make`` returns a ``BinPoly`` instead, which
packs the coefficients into the bits of a Python int (bit i = coefficient
of t^i); both classes share one API and compare equal across types.

Textual form is ascending sparse notation such as ``1+t+t^3`` or
``2+2*t^4``; ``parse_poly`` reads it back exactly.
"""

import re

from ..errors import InvalidArgument
from .field import GF, FieldElem, get_field


def _strip(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


class Poly:
    """Immutable polynomial over a finite field."""

    __slots__ = ('field', 'c')

    def __new__(cls, field, coeffs=()):
        if field.q == 2:
            b = 0
            for i, a in enumerate(coeffs):
                if a & 1:
                    b |= 1 << i
            return BinPoly.from_bits(field, b)
        self = object.__new__(cls)
        self.field = field
        self.c = _strip(coeffs)
        return self

    # construction -----------------------------------------------------------
    @staticmethod
    def make(field, coeffs=()):
        return Poly(field, coeffs)

    @classmethod
    def zero(cls, field):
        return Poly.make(field, ())

    @classmethod
    def one(cls, field):
        return Poly.make(field, (1,))

    @classmethod
    def const(cls, field, a):
        if isinstance(a, FieldElem):
            a = a.value
        return Poly.make(field, (a,))

    @classmethod
    def monomial(cls, field, a, k):
        if isinstance(a, FieldElem):
            a = a.value
        return Poly.make(field, (0,) * k + (a,))

    @classmethod
    def gen(cls, field):
        """The indeterminate t."""
        return Poly.make(field, (0, 1))

    def _new(self, coeffs):
        return Poly(self.field, coeffs)

    # basic properties ---------------------------------------------------------
    @property
    def coeffs(self):
        return self.c

    @property
    def deg(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else 0

    @property
    def low(self):
        """Order of vanishing at t = 0 (the t-adic valuation); -1 for zero."""
        for i, a in enumerate(self.c):
            if a:
                return i
        return -1

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __bool__(self):
        return bool(self.c)

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == (1,)

    def is_const(self):
        return len(self.c) <= 1

    def terms(self):
        """(exponent, coefficient) pairs with nonzero coefficient."""
        return [(i, a) for i, a in enumerate(self.c) if a]

    # arithmetic -------------------------------------------------------------
    def _coerce(self, b):
        if isinstance(b, Poly):
            if b.field is not self.field and b.field != self.field:
                raise InvalidArgument('polynomials over different fields')
            return b
        if isinstance(b, FieldElem):
            return Poly.const(self.field, b.value)
        if isinstance(b, int):
            return Poly.const(self.field, self.field.from_int(b))
        return NotImplemented

    def __add__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        F = self.field
        a, bb = self.c, b.c
        if len(a) < len(bb):
            a, bb = bb, a
        if F.k == 1:
            p = F.p
            r = [(x + y) % p for x, y in zip(a, bb)]
        else:
            t = F.add_t
            r = [t[x][y] for x, y in zip(a, bb)]
        r.extend(a[len(bb):])
        return self._new(r)

    __radd__ = __add__

    def __neg__(self):
        ng = self.field.neg_t
        return self._new([ng[x] for x in self.c])

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

    def scale(self, a):
        """Multiply by the field element with code a."""
        if isinstance(a, FieldElem):
            a = a.value
        if a == 0:
            return self._new(())
        if a == 1:
            return self
        F = self.field
        if F.k == 1:
            p = F.p
            return self._new([x * a % p for x in self.c])
        row = F.mul_t[a]
        return self._new([row[x] for x in self.c])

    def shift(self, k):
        """Multiply by t**k (k >= 0)."""
        if k < 0:
            raise InvalidArgument('negative shift; use divmod for division by t')
        if not self.c or k == 0:
            return self
        return self._new((0,) * k + self.c)

    def __mul__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        a, bb = self.c, b.c
        if not a or not bb:
            return self._new(())
        if len(a) == 1:
            return b.scale(a[0])
        if len(bb) == 1:
            return self.scale(bb[0])
        F = self.field
        r = [0] * (len(a) + len(bb) - 1)
        if F.k == 1:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(bb):
                        r[i + j] += x * y
            p = F.p
            return self._new([v % p for v in r])
        mt, at = F.mul_t, F.add_t
        for i, x in enumerate(a):
            if x:
                row = mt[x]
                for j, y in enumerate(bb):
                    r[i + j] = at[r[i + j]][row[y]]
        return self._new(r)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise InvalidArgument('negative power of a polynomial')
        r = Poly.one(self.field)
        a = self
        while e:
            if e & 1:
                r = r * a
            a = a * a
            e >>= 1
        return r

    def __divmod__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        if not b.c:
            raise ZeroDivisionError('polynomial division by zero')
        F = self.field
        db = b.deg
        if self.deg < db:
            return self._new(()), self
        inv = F.inv(b.lc)
        r = list(self.c)
        qc = [0] * (len(r) - db)
        bc = b.c
        if F.k == 1:
            p = F.p
            for d in range(len(r) - 1, db - 1, -1):
                cq = r[d] * inv % p
                if cq:
                    qc[d - db] = cq
                    off = d - db
                    for i in range(db + 1):
                        r[off + i] = (r[off + i] - cq * bc[i]) % p
        else:
            mt, at, ng = F.mul_t, F.add_t, F.neg_t
            for d in range(len(r) - 1, db - 1, -1):
                cq = mt[r[d]][inv]
                if cq:
                    qc[d - db] = cq
                    off = d - db
                    row = mt[ng[cq]]
                    for i in range(db + 1):
                        r[off + i] = at[r[off + i]][row[bc[i]]]
        return self._new(qc), self._new(r[:db])

    def __floordiv__(self, b):
        return divmod(self, b)[0]

    def __mod__(self, b):
        return divmod(self, b)[1]

    def divides(self, b):
        """True iff self | b."""
        if not self.c:
            return not b
        return not (b % self)

    def exact_div(self, b):
        q, r = divmod(self, b)
        if r:
            raise InvalidArgument(f'{b} does not divide {self}')
        return q

    def monic(self):
        if not self.c or self.lc == 1:
            return self
        return self.scale(self.field.inv(self.lc))

    def derivative(self):
        F = self.field
        return self._new([F.mul(F.from_int(i), a) for i, a in enumerate(self.c)][1:])

    def __call__(self, x):
        """Evaluate at the field element with code x (Horner)."""
        if isinstance(x, FieldElem):
            x = x.value
        F = self.field
        r = 0
        for a in reversed(self.c):
            r = F.add(F.mul(r, x), a)
        return r

    def reverse(self, n=None):
        """t**n * self(1/t); n defaults to the degree."""
        if n is None:
            n = self.deg
        c = self.c + (0,) * max(0, n + 1 - len(self.c))
        return self._new(tuple(reversed(c[:n + 1])))

    def truncate(self, n):
        """self mod t**n."""
        return self._new(self.c[:n])

    def div_t(self, k):
        """Exact division by t**k."""
        if any(self.c[:k]):
            raise InvalidArgument(f't^{k} does not divide {self}')
        return self._new(self.c[k:])

    def frobenius_root(self):
        """p-th root of a polynomial in t**p (perfect field)."""
        F = self.field
        p = F.p
        out = []
        for i, a in enumerate(self.c):
            if i % p:
                if a:
                    raise InvalidArgument('not a p-th power')
                continue
            out.append(F.pow(a, F.q // p) if F.k > 1 else a)
        return self._new(out)

    # comparisons --------------------------------------------------------------
    def __eq__(self, b):
        if isinstance(b, Poly):
            return self.coeffs == b.coeffs and self.field == b.field
        if isinstance(b, (int, FieldElem)):
            b = self._coerce(b)
            return self.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def sort_key(self):
        return (self.deg, tuple(reversed(self.coeffs)))

    def __lt__(self, b):
        return self.sort_key() < b.sort_key()

    # text ---------------------------------------------------------------------
    def __str__(self):
        return format_terms(self.terms())

    def __repr__(self):
        return f'Poly({self}, q={self.field.q})'

    def __reduce__(self):
        return (_rebuild_poly, (self.field.q, self.field.modulus, self.coeffs))


def _rebuild_poly(q, modulus, coeffs):
    return Poly.make(get_field(q, modulus), coeffs)


class BinPoly(Poly):
    """Polynomial over F_2 packed into an int."""

    __slots__ = ('b',)

    @staticmethod
    def from_bits(field, b):
        self = object.__new__(BinPoly)
        self.field = field
        self.b = b
        return self

    def _new(self, coeffs):
        return Poly(self.field, coeffs)

    @property
    def c(self):
        b = self.b
        return tuple((b >> i) & 1 for i in range(b.bit_length()))

    @property
    def coeffs(self):
        return self.c

    @property
    def deg(self):
        return self.b.bit_length() - 1

    @property
    def lc(self):
        return 1 if self.b else 0

    @property
    def low(self):
        b = self.b
        return (b & -b).bit_length() - 1

    def __getitem__(self, i):
        return (self.b >> i) & 1 if i >= 0 else 0

    def __bool__(self):
        return self.b != 0

    def is_zero(self):
        return self.b == 0

    def is_one(self):
        return self.b == 1

    def is_const(self):
        return self.b < 2

    def terms(self):
        b, out, i = self.b, [], 0
        while b:
            if b & 1:
                out.append((i, 1))
            b >>= 1
            i += 1
        return out

    def _bcoerce(self, b):
        if isinstance(b, BinPoly):
            return b.b
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return b.b if isinstance(b, BinPoly) else Poly.make(self.field, b.c).b

    def __add__(self, b):
        b = self._bcoerce(b)
        if b is NotImplemented:
            return b
        return BinPoly.from_bits(self.field, self.b ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def scale(self, a):
        if isinstance(a, FieldElem):
            a = a.value
        return self if a else BinPoly.from_bits(self.field, 0)

    def shift(self, k):
        if k < 0:
            raise InvalidArgument('negative shift; use divmod for division by t')
        return BinPoly.from_bits(self.field, self.b << k)

    def __mul__(self, b):
        b = self._bcoerce(b)
        if b is NotImplemented:
            return b
        return BinPoly.from_bits(self.field, clmul(self.b, b))

    __rmul__ = __mul__

    def __divmod__(self, b):
        b = self._bcoerce(b)
        if b is NotImplemented:
            return b
        if not b:
            raise ZeroDivisionError('polynomial division by zero')
        qv, rv = cldivmod(self.b, b)
        return BinPoly.from_bits(self.field, qv), BinPoly.from_bits(self.field, rv)

    def monic(self):
        return self

    def derivative(self):
        # odd-exponent terms survive, shifted down
        return BinPoly.from_bits(self.field, (self.b >> 1) & _even_bits(self.b.bit_length()))

    def __call__(self, x):
        if isinstance(x, FieldElem):
            x = x.value
        if x:
            return bin(self.b).count('1') & 1
        return self.b & 1

    def truncate(self, n):
        return BinPoly.from_bits(self.field, self.b & ((1 << n) - 1))

    def div_t(self, k):
        if self.b & ((1 << k) - 1):
            raise InvalidArgument(f't^{k} does not divide {self}')
        return BinPoly.from_bits(self.field, self.b >> k)

    def __eq__(self, b):
        if isinstance(b, BinPoly):
            return self.b == b.b
        return Poly.__eq__(self, b)

    def __hash__(self):
        return hash(self.b)

    def sort_key(self):
        return (self.deg, self.b)


def _even_bits(n):
    # after >> 1 the surviving derivative terms sit at even bit positions
    m = 0
    for i in range(0, n + 1, 2):
        m |= 1 << i
    return m


def clmul(a, b):
    """Carry-less product of two ints."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def cldivmod(a, b):
    db = b.bit_length()
    qv = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        qv |= 1 << s
        a ^= b << s
    return qv, a


# textual form --------------------------------------------------------------------

def format_terms(terms, var='t'):
    """Ascending sparse notation from (exponent, code) pairs."""
    if not terms:
        return '0'
    out = []
    for e, a in terms:
        if e == 0:
            s = str(a)
        else:
            mono = var if e == 1 else f'{var}^{e}'
            s = mono if a == 1 else f'{a}*{mono}'
        out.append(s)
    return '+'.join(out)


_TERM = re.compile(r'\s*([+-]?)\s*(\d+)?\s*(\*?\s*([a-z])\s*(\^\s*\(?\s*(-?\d+)\s*\)?)?)?\s*')


def parse_terms(s, field, var='t'):
    """Parse sparse notation into a dict exponent -> code.

    A leading '-' negates the term; integer coefficients are field codes
    (prime fields: residues; extension fields: encoded elements).
    """
    s = s.strip()
    if not s:
        raise InvalidArgument('empty polynomial string')
    pos, out = 0, {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise InvalidArgument(f'cannot parse polynomial {s!r} at {pos}')
        sign, coef, mono, v, _, exp = m.groups()
        if coef is None and mono is None:
            raise InvalidArgument(f'cannot parse polynomial {s!r} at {pos}')
        if v is not None and v != var:
            raise InvalidArgument(f'unknown variable {v!r} in {s!r}')
        a = int(coef) if coef is not None else 1
        if field.k == 1:
            a %= field.p
        elif not 0 <= a < field.q:
            raise InvalidArgument(f'coefficient {a} is not an element code of {field}')
        if sign == '-':
            a = field.neg(a)
        e = 0 if mono is None else (int(exp) if exp is not None else 1)
        out[e] = field.add(out.get(e, 0), a)
        pos = m.end()
        if pos < len(s) and s[pos] not in '+-':
            raise InvalidArgument(f'cannot parse polynomial {s!r} at {pos}')
    return {e: a for e, a in out.items() if a}


def parse_poly(s, field):
    """Inverse of ``str(Poly)``."""
    if isinstance(field, int):
        field = get_field(field)
    terms = parse_terms(s, field)
    if terms and min(terms) < 0:
        raise InvalidArgument(f'negative exponent in polynomial {s!r}')
    n = max(terms) + 1 if terms else 0
    c = [0] * n
    for e, a in terms.items():
        c[e] = a
    return Poly.make(field, c)


def poly_gcd(a, b):
    """Monic gcd."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_gcdext(a, b):
    """Return (g, u, v) with a*u + b*v = g, g monic.

    For a, b of positive degree the cofactors satisfy deg u < deg b - deg g
    and deg v < deg a - deg g.
    """
    F = a.field
    if not a and not b:
        raise InvalidArgument('gcd of (0, 0) is undefined')
    zero, one = Poly.zero(F), Poly.one(F)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        qt, r2 = divmod(r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def random_poly(field, deg, rng, monic=False, exact=False):
    """Uniform polynomial of degree <= deg (exactly deg when ``exact``)."""
    c = [rng.randrange(field.q) for _ in range(deg + 1)]
    if deg >= 0 and (exact or monic):
        c[deg] = 1 if monic else rng.randrange(1, field.q)
    return Poly.make(field, c)


__all__ = ['GF', 'Poly', 'BinPoly', 'parse_poly', 'poly_gcd', 'poly_gcdext', 'random_poly',
           'format_terms', 'parse_terms']

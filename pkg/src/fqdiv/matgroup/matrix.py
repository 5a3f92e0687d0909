"""Determinant-one matrices over F_q[t] or F_q[t, 1/t]."""

import os
import re
from fractions import Fraction

from ..algebra import LaurentPoly, Poly, get_field, parse_laurent, parse_poly
from ..errors import InvalidArgument

POLY = 'poly'
LAURENT = 'laurent'

# Re-check det = 1 after every internal operation (slow; for debugging).
DEBUG_CHECKS = os.environ.get('FQDIV_DEBUG', '') not in ('', '0')


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    total = None
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else rows[0][0] * 0


class GroupMatrix:
    """An n x n matrix with det = 1 and entries in F_q[t] or F_q[t, 1/t].

    ``rows`` is a tuple of tuples of Poly (ring 'poly') or LaurentPoly
    (ring 'laurent').  Instances are immutable.
    """

    __slots__ = ('rows', 'field', 'ring', '_hash')

    def __init__(self, rows, field=None, ring=None, check=True):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n < 2 or any(len(r) != n for r in rows):
            raise InvalidArgument('GroupMatrix needs a square shape with n >= 2')
        sample = rows[0][0]
        if field is None:
            field = sample.field
        if ring is None:
            ring = LAURENT if isinstance(sample, LaurentPoly) else POLY
        self.rows = rows
        self.field = field
        self.ring = ring
        self._hash = None
        if check or DEBUG_CHECKS:
            d = _det(rows)
            if not (d - 1).is_zero():
                raise InvalidArgument(f'determinant is {d}, not 1')

    # constructors -------------------------------------------------------------
    @classmethod
    def identity(cls, n, field, ring=POLY):
        one = Poly.one(field) if ring == POLY else LaurentPoly.one(field)
        zero = Poly.zero(field) if ring == POLY else LaurentPoly.zero(field)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)],
                   field, ring, check=False)

    @classmethod
    def from_poly_rows(cls, rows, field=None, ring=None):
        """Build from nested lists of Poly / LaurentPoly / ints."""
        if field is None:
            field = next(e.field for r in rows for e in r if hasattr(e, 'field'))
        if ring is None:
            ring = LAURENT if any(isinstance(e, LaurentPoly) for r in rows for e in r) else POLY
        conv = _converter(field, ring)
        return cls([[conv(e) for e in r] for r in rows], field, ring)

    @classmethod
    def parse(cls, s, q_or_field, ring=None):
        """Parse "[[1,0,t^2+1],[0,1,t],[0,0,1]]"."""
        field = get_field(q_or_field) if isinstance(q_or_field, int) else q_or_field
        body = s.strip()
        if not (body.startswith('[[') and body.endswith(']]')):
            raise InvalidArgument(f'matrix must look like [[..],[..]]: {s!r}')
        row_strs = re.split(r'\]\s*,\s*\[', body[2:-2])
        cells = [[c.strip() for c in r.split(',')] for r in row_strs]
        if ring is None:
            ring = LAURENT if '^-' in s or '^(-' in s else POLY
        if ring == POLY:
            rows = [[parse_poly(c, field) for c in r] for r in cells]
        else:
            rows = [[parse_laurent(c, field) for c in r] for r in cells]
        return cls(rows, field, ring)

    # basic data -----------------------------------------------------------------
    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, i, j):
        """1-based access, matching the e_{i,j} letter convention."""
        return self.rows[i - 1][j - 1]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def det(self):
        return _det(self.rows)

    def zero_entry(self):
        return Poly.zero(self.field) if self.ring == POLY else LaurentPoly.zero(self.field)

    def one_entry(self):
        return Poly.one(self.field) if self.ring == POLY else LaurentPoly.one(self.field)

    def is_identity(self):
        for i, r in enumerate(self.rows):
            for j, e in enumerate(r):
                if i == j:
                    if not (e - 1).is_zero():
                        return False
                elif e:
                    return False
        return True

    # arithmetic -------------------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, GroupMatrix):
            return NotImplemented
        n = self.n
        cols = [other.column(j) for j in range(n)]
        zero = self.zero_entry()
        rows = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        ring = LAURENT if LAURENT in (self.ring, other.ring) else POLY
        if ring != self.ring or ring != other.ring:
            return GroupMatrix.from_poly_rows(rows, self.field, ring)
        return GroupMatrix(rows, self.field, ring, check=False)

    def inverse(self):
        """Adjugate (exact since det = 1)."""
        n = self.n
        rows = self.rows
        inv = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
                c = _det(minor) if n > 2 else minor[0][0]
                inv[j][i] = -c if (i + j) % 2 else c
        return GroupMatrix(inv, self.field, self.ring, check=False)

    def with_columns(self, cols):
        """New matrix from a list of columns (no det check)."""
        n = self.n
        return GroupMatrix([[cols[j][i] for j in range(n)] for i in range(n)], self.field, self.ring,
                           check=False)

    def columns(self):
        return [list(self.column(j)) for j in range(self.n)]

    def to_laurent(self):
        if self.ring == LAURENT:
            return self
        return GroupMatrix([[LaurentPoly(e) for e in r] for r in self.rows], self.field, LAURENT,
                           check=False)

    def to_poly(self):
        if self.ring == POLY:
            return self
        return GroupMatrix([[e.to_poly() for e in r] for r in self.rows], self.field, POLY, check=False)

    def is_polynomial(self):
        return self.ring == POLY or all(e.is_poly() for r in self.rows for e in r)

    def sigma(self):
        """Entrywise image under t -> 1/t (a Laurent matrix)."""
        m = self.to_laurent()
        return GroupMatrix([[e.sigma() for e in r] for r in m.rows], self.field, LAURENT, check=False)

    # identity and display -----------------------------------------------------------
    def key(self):
        """Canonical hashable encoding of the entries."""
        if self.ring == POLY:
            if self.field.q == 2:
                return tuple(e.b for r in self.rows for e in r)
            return tuple(e.c for r in self.rows for e in r)
        return tuple((e.shift, e.poly.c) for r in self.rows for e in r)

    def __eq__(self, other):
        if not isinstance(other, GroupMatrix):
            return NotImplemented
        if self.n != other.n or self.field != other.field:
            return False
        if self.ring == other.ring:
            return self.rows == other.rows
        return self.to_laurent().rows == other.to_laurent().rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.to_laurent().key()) if self.ring == POLY else hash(self.key())
        return self._hash

    def __str__(self):
        return '[' + ','.join('[' + ','.join(str(e) for e in r) + ']' for r in self.rows) + ']'

    def __repr__(self):
        return f'GroupMatrix({self}, q={self.field.q})'


def _converter(field, ring):
    def conv(e):
        if isinstance(e, int):
            e = Poly.const(field, field.from_int(e))
        if ring == POLY:
            if isinstance(e, LaurentPoly):
                return e.to_poly()
            return e
        if isinstance(e, Poly):
            return LaurentPoly(e)
        return e
    return conv


def entry_deg(e):
    """Degree in t of a Poly/LaurentPoly entry; -1 for zero."""
    if isinstance(e, LaurentPoly):
        return -1 if e.is_zero() else e.deg
    return e.deg


def max_deg(g):
    return max(entry_deg(e) for r in g.rows for e in r)


def proxy_dist(g):
    """rho(g) = 1 + max entry degree, i.e. 1 + log_q ||g||."""
    if g.ring != POLY and not g.is_polynomial():
        raise InvalidArgument('proxy_dist needs polynomial entries; use the product proxy')
    return 1 + max_deg(g)


def is_eps_large(g, i, j, eps=Fraction(1, 2)):
    """deg g[i][j] >= eps * max deg, in exact arithmetic (0-based i, j)."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise InvalidArgument('eps must lie in (0, 1)')
    m = max_deg(g)
    e = g.rows[i][j]
    if not e:
        # zero counts only in the degenerate case max deg = 0
        return m == 0
    return entry_deg(e) >= eps * m


def eps_large_entries(g, eps=Fraction(1, 2), column=None):
    """0-based positions of eps-large entries (optionally within one column)."""
    eps = Fraction(eps)
    m = max_deg(g)
    out = []
    for i, r in enumerate(g.rows):
        for j, e in enumerate(r):
            if column is not None and j != column:
                continue
            if (entry_deg(e) >= eps * m) if e else m == 0:
                out.append((i, j))
    return out

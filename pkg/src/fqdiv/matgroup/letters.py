"""Generator letters, words, and their action by right multiplication.

Letter kinds (indices are 1-based, as in e_{i,j}):

* ``elem``  -- e_{i,j}(coeff), the identity plus coeff at (i, j);
* ``mono``  -- a monomial matrix with entries +-1: right multiplication
  sends column c to ``signs[c] * column perm[c]`` (0-based c);
* ``block`` -- the anchor A_b (b = 1, 2) placed on rows/columns i, i+1;
  with ``sigma`` set, the image of A_b under t -> 1/t.

Every letter carries an ``inverse`` flag.  Right multiplication by a
letter is a column operation, which is how paths in the Cayley graph are
walked without forming full matrix products.
"""

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from ..algebra import LaurentPoly, Poly, get_field, parse_laurent
from ..errors import InvalidArgument
from .matrix import POLY, GroupMatrix


@dataclass(frozen=True)
class GenLetter:
    kind: str
    i: int = 0
    j: int = 0
    coeff: LaurentPoly = None
    perm: tuple = ()
    signs: tuple = ()
    block: int = 0
    sigma: bool = False
    inverse: bool = False

    def inv(self):
        return GenLetter(self.kind, self.i, self.j, self.coeff, self.perm, self.signs, self.block,
                         self.sigma, not self.inverse)

    # serialization ------------------------------------------------------------------
    def to_dict(self):
        d = {'kind': self.kind, 'i': self.i, 'j': self.j, 'inverse': self.inverse}
        if self.kind == 'elem':
            d['coeff'] = str(self.coeff)
        elif self.kind == 'mono':
            d['perm'] = list(self.perm)
            d['signs'] = list(self.signs)
        else:
            d['block'] = self.block
            if self.sigma:
                d['sigma'] = True
        return d

    @staticmethod
    def from_dict(d, field):
        kind = d['kind']
        inv = bool(d.get('inverse', False))
        if kind == 'elem':
            return GenLetter('elem', d['i'], d['j'], coeff=parse_laurent(d['coeff'], field), inverse=inv)
        if kind == 'mono':
            return GenLetter('mono', perm=tuple(d['perm']), signs=tuple(d['signs']), inverse=inv)
        if kind == 'block':
            return GenLetter('block', d['i'], 0, block=d['block'], sigma=bool(d.get('sigma')),
                             inverse=inv)
        raise InvalidArgument(f'unknown letter kind {kind!r}')

    def __str__(self):
        s = {'elem': lambda: f'e{self.i}{self.j}({self.coeff})',
             'mono': lambda: f'w{list(self.perm)}{list(self.signs)}',
             'block': lambda: f'A{self.block}{"s" if self.sigma else ""}@{self.i}'}[self.kind]()
        return s + ('^-1' if self.inverse else '')


def elem(i, j, coeff):
    if i == j:
        raise InvalidArgument('e_{i,j} needs i != j')
    if isinstance(coeff, Poly):
        coeff = LaurentPoly(coeff)
    return GenLetter('elem', i, j, coeff=coeff)


def mono(perm, signs):
    return GenLetter('mono', perm=tuple(perm), signs=tuple(signs))


def block(b, i, sigma=False):
    return GenLetter('block', i, 0, block=b, sigma=sigma)


# anchor matrices -------------------------------------------------------------------------
@lru_cache(maxsize=None)
def anchor_entries(field, b, sigma=False):
    """A_1 = [[1, t], [1, t+1]] or A_2 = [[t+1, t], [1, 1]] as LaurentPolys."""
    one = LaurentPoly.one(field)
    t = LaurentPoly.monomial(field, 1, 1)
    if b == 1:
        m = ((one, t), (one, t + 1))
    elif b == 2:
        m = ((t + 1, t), (one, one))
    else:
        raise InvalidArgument(f'anchor index must be 1 or 2, not {b}')
    if sigma:
        m = tuple(tuple(e.sigma() for e in r) for r in m)
    return m


def _block_entries(letter, field):
    (a, b), (c, d) = anchor_entries(field, letter.block, letter.sigma)
    if letter.inverse:
        a, b, c, d = d, -b, -c, a
    return a, b, c, d


def _to_ring(x, ring):
    return x.to_poly() if ring == POLY else x


# application ------------------------------------------------------------------------------
def apply_to_columns(cols, letter, field, ring):
    """Right-multiply the matrix with columns ``cols`` (list, modified in place)."""
    k = letter.kind
    if k == 'elem':
        c = letter.coeff
        if letter.inverse:
            c = -c
        c = _to_ring(c, ring)
        src, dst = cols[letter.i - 1], cols[letter.j - 1]
        cols[letter.j - 1] = [d + c * s if s else d for s, d in zip(src, dst)]
    elif k == 'mono':
        old = list(cols)
        perm, signs = letter.perm, letter.signs
        if not letter.inverse:
            for c in range(len(cols)):
                cols[c] = _scale_col(old[perm[c]], signs[c], field)
        else:
            for r in range(len(cols)):
                cols[perm[r]] = _scale_col(old[r], signs[r], field)
    else:
        a, b, c, d = (_to_ring(x, ring) for x in _block_entries(letter, field))
        i = letter.i - 1
        x, y = cols[i], cols[i + 1]
        cols[i] = [_lin(a, u, c, v) for u, v in zip(x, y)]
        cols[i + 1] = [_lin(b, u, d, v) for u, v in zip(x, y)]
    return cols


def _lin(a, u, c, v):
    r = (u if a.is_one() else a * u) if u else u
    if v:
        r = r + (v if c.is_one() else c * v)
    return r


def _scale_col(col, s, field):
    if s == 1:
        return list(col)
    return [e.scale(s) for e in col]


def apply_letter(g, letter):
    """g * letter."""
    cols = apply_to_columns(g.columns(), letter, g.field, g.ring)
    return g.with_columns(cols)


def letter_matrix(letter, n, field, ring=POLY):
    return apply_letter(GroupMatrix.identity(n, field, ring), letter)


def eval_word(word, n, field, ring=POLY, start=None):
    """Product of the letters of ``word`` (right to left application order: start * w1 * w2 ...)."""
    g = start if start is not None else GroupMatrix.identity(n, field, ring)
    cols = g.columns()
    ring = g.ring
    for letter in word:
        apply_to_columns(cols, letter, field, ring)
    return g.with_columns(cols)


def walk(start, word):
    """Yield start, start*w1, start*w1*w2, ... as GroupMatrix objects."""
    cols = start.columns()
    yield start
    for letter in word:
        apply_to_columns(cols, letter, start.field, start.ring)
        yield start.with_columns(cols)


def invert_word(word):
    return [l.inv() for l in reversed(word)]


def word_to_json(word):
    return json.dumps([l.to_dict() for l in word])


def word_from_json(s, q_or_field):
    field = get_field(q_or_field) if isinstance(q_or_field, int) else q_or_field
    return [GenLetter.from_dict(d, field) for d in json.loads(s)]


# the generating set S = S0 u S1 u S2 ----------------------------------------------------------
def s0_letters(n, field):
    t = LaurentPoly.monomial(field, 1, 1)
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                for a in field.units:
                    out.append(elem(i, j, LaurentPoly.monomial(field, a, 0)))
                out.append(elem(i, j, t))
    return out


def s1_letters(n, field, include_identity=False):
    """Monomial matrices with entries +-1 and det 1."""
    minus = field.neg(1)
    sign_choices = (1,) if minus == 1 else (1, minus)
    out = []
    seen = set()
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product(sign_choices, repeat=n):
            letter = mono(perm, signs)
            m = letter_matrix(letter, n, field)
            if not (m.det() - 1).is_zero():
                continue
            if not include_identity and m.is_identity():
                continue
            if m.key() in seen:
                continue
            seen.add(m.key())
            out.append(letter)
    return out


def s2_letters(n, field):
    return [block(b, i) for b in (1, 2) for i in range(1, n)]


def generating_set(n, field, symmetric=True):
    """S (and its inverses when ``symmetric``) with duplicate matrices removed."""
    letters = s0_letters(n, field) + s1_letters(n, field) + s2_letters(n, field)
    if symmetric:
        letters = letters + [l.inv() for l in letters]
    out, seen = [], set()
    for l in letters:
        k = letter_matrix(l, n, field).key()
        if k not in seen:
            seen.add(k)
            out.append(l)
    return out


def signed_swap(n, a, b, field):
    """Monomial letter exchanging columns a, b (0-based) with a sign keeping det = 1.

    Right multiplication gives new col a = -old col b, new col b = old col a.
    """
    perm = list(range(n))
    perm[a], perm[b] = b, a
    signs = [1] * n
    signs[a] = field.neg(1)
    return mono(perm, signs)

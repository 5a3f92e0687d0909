"""Vertices of the Bruhat-Tits building of SL_n over a local function field.

A vertex is the homothety class of an o-lattice, where o is the valuation
ring of a place of F_q(t): F_q[[1/t]] at infinity (uniformizer 1/t) or the
P-adic completion of F_q[t] at a monic irreducible P (uniformizer P).
Lattices are given by basis matrices whose columns span them over o; all
arithmetic is exact in F_q(t).

Each class has a canonical basis: lower triangular, diagonal entries
pi^{a_i}, each entry below the diagonal reduced to a fixed representative
modulo pi^{a_i} o, and the whole matrix scaled so that min a_i = 0.  Two
bases give the same class exactly when their canonical bases agree.
"""

import itertools
import json
import math
from dataclasses import dataclass

from .algebra import LaurentPoly, Poly, RationalFunc, embed, get_field, poly_gcdext
from .errors import InvalidArgument
from .matgroup import GroupMatrix
from .valuations import Place, parse_place, valuation_at


# local rings -----------------------------------------------------------------------------------
class LocalRingContext:
    """The valuation ring at one place, with its uniformizer and residue field size."""

    def __init__(self, place):
        if not isinstance(place, Place):
            raise InvalidArgument('LocalRingContext needs a Place')
        self.place = place
        self.field = place.field
        F = self.field
        if place.is_infinite:
            self.pi = RationalFunc(Poly.one(F), Poly.gen(F))
        else:
            self.pi = RationalFunc.from_poly(place.poly)

    @classmethod
    def infinite(cls, field):
        F = get_field(field) if isinstance(field, int) else field
        return cls(Place.infinite(F))

    @classmethod
    def parse(cls, s, field):
        F = get_field(field) if isinstance(field, int) else field
        return cls(parse_place(s, F))

    @property
    def residue_size(self):
        return self.field.q ** self.place.degree

    def val(self, x):
        return valuation_at(x, self.place)

    def pi_power(self, k):
        return self.pi ** k

    def reduce(self, x, a):
        """The canonical representative of x modulo pi^a o."""
        x = _rat(x, self.field)
        v = self.val(x)
        if v >= a:
            return RationalFunc.from_poly(Poly.zero(self.field))
        F = self.field
        if self.place.is_infinite:
            # the terms c_k t^-k of the expansion with k < a
            s = embed(x, a - 1)
            top = max(a - 1, 0)
            acc = Poly.zero(F)
            for i, c in enumerate(s.coeffs):
                k = s.val + i
                if k > a - 1:
                    break
                if c:
                    acc = acc + Poly.monomial(F, c, top - k)
            return RationalFunc(acc, Poly.monomial(F, 1, top))
        P = self.place.poly
        m = a - v
        z = x * self.pi_power(-v)
        mod = P ** m
        g, u, _ = poly_gcdext(z.den, mod)
        r = (z.num * u) % mod
        return RationalFunc.from_poly(r) * self.pi_power(v)

    def __eq__(self, other):
        return isinstance(other, LocalRingContext) and self.place == other.place

    def __hash__(self):
        return hash(('ctx', self.place))

    def __str__(self):
        return f'o at {self.place}'


def _rat(x, F):
    if isinstance(x, RationalFunc):
        return x
    if isinstance(x, Poly):
        return RationalFunc.from_poly(x)
    if isinstance(x, LaurentPoly):
        return x.to_rational()
    if isinstance(x, int):
        return RationalFunc.from_poly(Poly.const(F, F.from_int(x)))
    raise InvalidArgument(f'cannot use {type(x).__name__} as a matrix entry')


def as_rational_matrix(M, field=None):
    """Rows of RationalFunc from a GroupMatrix or a nested list."""
    if isinstance(M, GroupMatrix):
        F = M.field
        rows = M.rows
    else:
        rows = M
        F = field
        if F is None:
            for r in rows:
                for e in r:
                    if not isinstance(e, int):
                        F = e.field
                        break
                if F is not None:
                    break
    if F is None:
        raise InvalidArgument('cannot infer the field of an all-integer matrix')
    out = [[_rat(e, F) for e in r] for r in rows]
    n = len(out)
    if any(len(r) != n for r in out):
        raise InvalidArgument('matrix must be square')
    return out


# exact linear algebra over F_q(t) -----------------------------------------------------------
def _zero(F):
    return RationalFunc.from_poly(Poly.zero(F))


def _one(F):
    return RationalFunc.from_poly(Poly.one(F))


def mat_mul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    F = A[0][0].field
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = _zero(F)
            for l in range(m):
                if A[i][l] and B[l][j]:
                    acc = acc + A[i][l] * B[l][j]
            row.append(acc)
        out.append(row)
    return out


def mat_inv(A):
    n = len(A)
    F = A[0][0].field
    M = [list(r) + [_one(F) if i == j else _zero(F) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            raise InvalidArgument('matrix is singular')
        M[c], M[p] = M[p], M[c]
        inv = M[c][c].inverse()
        M[c] = [e * inv for e in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [r[n:] for r in M]


def det(A):
    n = len(A)
    F = A[0][0].field
    M = [list(r) for r in A]
    d = _one(F)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return _zero(F)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c]
        inv = M[c][c].inverse()
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return d


# Smith valuations ---------------------------------------------------------------------------
def smith_valuations(M, ctx):
    """Ascending (a_1, ..., a_n) with U M V = diag(pi^{a_i}) for U, V in GL_n(o).

    Pivots on an entry of minimal valuation, clears its row and column
    (the multipliers lie in o), and recurses on the complementary block.
    """
    A = as_rational_matrix(M, ctx.field)
    n = len(A)
    if not det(A):
        raise InvalidArgument('smith valuations need an invertible matrix')
    out = []
    rows = list(range(n))
    cols = list(range(n))
    while rows:
        best = None
        for i in rows:
            for j in cols:
                if A[i][j]:
                    v = ctx.val(A[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        v, pi_, pj = best
        out.append(v)
        piv_inv = A[pi_][pj].inverse()
        for i in rows:
            if i != pi_ and A[i][pj]:
                f = A[i][pj] * piv_inv
                for j in cols:
                    if A[pi_][j]:
                        A[i][j] = A[i][j] - f * A[pi_][j]
        rows.remove(pi_)
        cols.remove(pj)
    return sorted(out)


def smith_valuations_minors(M, ctx):
    """Independent oracle: a_1 + ... + a_k is the least valuation of a k x k minor."""
    A = as_rational_matrix(M, ctx.field)
    n = len(A)
    partial = [0]
    for k in range(1, n + 1):
        low = math.inf
        for rs in itertools.combinations(range(n), k):
            for cs in itertools.combinations(range(n), k):
                d = det([[A[i][j] for j in cs] for i in rs])
                if d:
                    low = min(low, ctx.val(d))
        if low == math.inf:
            raise InvalidArgument('smith valuations need an invertible matrix')
        partial.append(low)
    return [partial[k] - partial[k - 1] for k in range(1, n + 1)]


# lattice classes ---------------------------------------------------------------------------
def _hermite(A, ctx):
    """Lower triangular basis of the column span of A over o, and its diagonal exponents."""
    n = len(A)
    H = [list(r) for r in A]
    exps = []
    for i in range(n):
        cands = [(ctx.val(H[i][j]), j) for j in range(i, n) if H[i][j]]
        if not cands:
            raise InvalidArgument('lattice basis must be invertible')
        a, j = min(cands)
        if j != i:
            for r in H:
                r[i], r[j] = r[j], r[i]
        u = ctx.pi_power(a) / H[i][i]
        for r in H:
            if r[i]:
                r[i] = r[i] * u
        for j in range(i + 1, n):
            if H[i][j]:
                f = H[i][j] / H[i][i]
                for r in H:
                    if r[i]:
                        r[j] = r[j] - f * r[i]
        exps.append(a)
    for i in range(n):
        for j in range(i):
            x = H[i][j]
            rep = ctx.reduce(x, exps[i])
            if x != rep:
                f = (x - rep) / H[i][i]
                for k in range(i, n):
                    if H[k][i]:
                        H[k][j] = H[k][j] - f * H[k][i]
    return H, exps


@dataclass(frozen=True)
class LatticeClass:
    """Homothety class [M o^n]; ``basis`` is the canonical basis, ``exponents`` its diagonal."""
    ctx: LocalRingContext
    basis: tuple
    exponents: tuple

    @classmethod
    def from_matrix(cls, M, ctx):
        A = as_rational_matrix(M, ctx.field)
        H, exps = _hermite(A, ctx)
        m = min(exps)
        if m:
            s = ctx.pi_power(-m)
            H = [[e * s for e in r] for r in H]
            exps = [a - m for a in exps]
        return cls(ctx, tuple(tuple(r) for r in H), tuple(exps))

    @classmethod
    def standard(cls, n, ctx):
        F = ctx.field
        return cls.from_matrix([[_one(F) if i == j else _zero(F) for j in range(n)]
                                for i in range(n)], ctx)

    @property
    def n(self):
        return len(self.basis)

    def matrix(self):
        return [list(r) for r in self.basis]

    def invariant(self):
        """Sorted Smith valuations of the basis, shifted to minimum 0 (the class's type data)."""
        v = smith_valuations(self.matrix(), self.ctx)
        return tuple(a - v[0] for a in v)

    def to_dict(self):
        return {'q': self.ctx.field.q, 'place': str(self.ctx.place),
                'basis': [[str(e) for e in r] for r in self.basis],
                'exponents': list(self.exponents), 'invariant': list(self.invariant())}

    def to_json(self):
        return json.dumps(self.to_dict())

    def __str__(self):
        return '[' + ', '.join('[' + ', '.join(str(e) for e in r) + ']' for r in self.basis) + ']'


def _check_pair(x, y):
    if x.ctx != y.ctx or x.n != y.n:
        raise InvalidArgument('lattice classes live in different buildings')


def relative_valuations(x, y):
    """Smith valuations of M_x^-1 M_y shifted to minimum 0."""
    _check_pair(x, y)
    v = smith_valuations(mat_mul(mat_inv(x.matrix()), y.matrix()), x.ctx)
    return [a - v[0] for a in v]


def incidence(x, y):
    """True iff representatives with pi x < y < x exist (includes x = y)."""
    return all(a in (0, 1) for a in relative_valuations(x, y))


def vertex_distance(x, y):
    """Spread max a_i - min a_i of the relative Smith valuations."""
    v = relative_valuations(x, y)
    return v[-1] - v[0]


def orbit(g, x):
    """The class of g applied to x."""
    A = as_rational_matrix(g, x.ctx.field)
    return LatticeClass.from_matrix(mat_mul(A, x.matrix()), x.ctx)


def homothety_shift(g, x):
    """k with g * Lambda = pi^k * Lambda for the canonical lattice of x, or None.

    For g of determinant 1 a stabilized class forces k = 0.
    """
    A = as_rational_matrix(g, x.ctx.field)
    H, exps = _hermite(mat_mul(A, x.matrix()), x.ctx)
    m = min(exps)
    if LatticeClass.from_matrix(H, x.ctx) != x:
        return None
    return m - min(x.exponents)

"""Elementary-matrix decomposition over F_q[t] and expansion into S0 letters."""

from ..algebra import LaurentPoly, Poly
from ..errors import InvalidArgument, PreconditionError
from .letters import elem, invert_word
from .matrix import POLY


class _ColumnReducer:
    """Column operations on a mutable copy, recording e_{i,j}(P) factors.

    Each recorded op (i, j, P) means: column j += P * column i, i.e. right
    multiplication by e_{i,j}(P) (1-based indices).
    """

    def __init__(self, g):
        self.cols = g.to_poly().columns()
        self.field = g.field
        self.ops = []

    def add(self, i, j, p):
        if not p:
            return
        src = self.cols[i]
        self.cols[j] = [d + p * s if s else d for s, d in zip(src, self.cols[j])]
        self.ops.append((i + 1, j + 1, p))

    def entry(self, r, c):
        return self.cols[c][r]


def decompose_elementary(g):
    """Factors [(i, j, P), ...] with g = e_{i1,j1}(P1) e_{i2,j2}(P2) ...

    Euclidean column reduction: each row, from the top, is brought to a
    standard basis vector by division with remainder between its entries.
    """
    if g.ring != POLY and not g.is_polynomial():
        raise InvalidArgument('decomposition needs entries in F_q[t]')
    n = g.n
    F = g.field
    red = _ColumnReducer(g)
    for r in range(n - 1):
        active = list(range(r, n))
        # Euclid on row r among the active columns
        while True:
            nz = [c for c in active if red.entry(r, c)]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda c: red.entry(r, c).deg)
            piv = red.entry(r, p)
            for c in nz:
                if c != p:
                    qt = red.entry(r, c) // piv
                    red.add(p, c, -qt)
        p = next(c for c in active if red.entry(r, c))
        u = red.entry(r, p).lc
        other = p if p != r else r + 1
        if p != r:
            # move the unit to column r: (.., 0 @ r, .., u @ p) -> (u, 0)
            red.add(p, r, Poly.one(F))
            red.add(r, p, Poly.const(F, F.neg(1)))
        if u != 1:
            # (u, 0) -> (u, 1) -> (1, 1) -> (1, 0) on columns (r, other)
            red.add(r, other, Poly.const(F, F.inv(u)))
            red.add(other, r, Poly.const(F, F.sub(1, u)))
            red.add(r, other, Poly.const(F, F.neg(1)))
    # now the matrix is lower unitriangular; clear below the diagonal
    for c in range(n - 2, -1, -1):
        for r in range(c + 1, n):
            v = red.entry(r, c)
            if v:
                red.add(r, c, -v)
    for r in range(n):
        for c in range(n):
            e = red.entry(r, c)
            if (r == c and not e.is_one()) or (r != c and e):
                raise AssertionError('column reduction did not reach the identity')
    # g * E1 * ... * Ek = I  =>  g = Ek^-1 ... E1^-1
    return [(i, j, -p) for i, j, p in reversed(red.ops)]


def elementary_product(factors, n, field):
    """Evaluate a factor list from ``decompose_elementary``."""
    from .letters import eval_word
    return eval_word([elem(i, j, p) for i, j, p in factors], n, field)


def expand_to_s0(i, j, P, n):
    """A word over S0 evaluating to e_{i,j}(P) (n >= 3).

    Monomials a*t^k are expanded with e_{i,j}(xy) = [e_{i,l}(x), e_{l,j}(y)],
    splitting t^k = t^ceil(k/2) * t^floor(k/2), so the length is O(k^2).
    """
    if n < 3:
        raise PreconditionError('expansion into S0 needs n >= 3')
    if i == j:
        raise InvalidArgument('e_{i,j} needs i != j')
    if isinstance(P, LaurentPoly):
        P = P.to_poly()
    F = P.field
    word = []
    for k, a in P.terms():
        word.extend(_expand_monomial(i, j, a, k, n, F))
    return word


def _third_index(i, j, n):
    return next(l for l in range(1, n + 1) if l not in (i, j))


def _expand_monomial(i, j, a, k, n, F):
    if k == 0:
        return [elem(i, j, LaurentPoly.monomial(F, a, 0))]
    if k == 1 and a == 1:
        return [elem(i, j, LaurentPoly.monomial(F, 1, 1))]
    l = _third_index(i, j, n)
    if k == 1:
        kx, ky, ax = 0, 1, a
    else:
        kx, ky, ax = (k + 1) // 2, k // 2, a
    x = _expand_monomial(i, l, ax, kx, n, F)
    y = _expand_monomial(l, j, 1, ky, n, F)
    return x + y + invert_word(x) + invert_word(y)


def decomposition_word(g):
    """A word over S0 for g in SL_n(F_q[t]), n >= 3."""
    word = []
    for i, j, p in decompose_elementary(g):
        word.extend(expand_to_s0(i, j, p, g.n))
    return word

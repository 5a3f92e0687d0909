"""The rank-one engine: anchor matrices, their eigendata, non-contracting
cones, and linear-length words for unipotent elements of
F_q[t]^2 x| <A> embedded in SL_3(F_q[t]).

Anchors: A_1 = [[1, t], [1, t+1]] and A_2 = [[t+1, t], [1, 1]], conjugate
by e_{1,2}(t).  Both have trace t + 2, so A + A^-1 = (t + 2) I and

    t * v = (A + A^-1 - 2) v        for every column vector v.

Substituting s + 1/s - 2 for t in x(t) therefore writes x(t) e_1 as a
sum of A^k c_k with digits c_k in F_q^2 and |k| <= deg x.  This closed
form is what ``short_unipotent_word`` uses; an exact Gaussian elimination
on the same digit system is kept as an independent oracle.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from .algebra import (DEFAULT_PRECISION, LaurentPoly, LaurentSeries, Poly, RationalFunc, embed,
                      get_field, solve_gf)
from .errors import ConstructionFailure, InvalidArgument, PrecisionExhausted
from .matgroup import GroupMatrix, block, elem

MAX_SLACK = 8


# anchors -------------------------------------------------------------------------------------
class AnchorMatrix:
    """A_1 or A_2 over a given F_q, with exact powers and cached eigendata."""

    def __init__(self, index, field):
        if index not in (1, 2):
            raise InvalidArgument(f'anchor index must be 1 or 2, not {index}')
        F = get_field(field) if isinstance(field, int) else field
        one = Poly.one(F)
        t = Poly.gen(F)
        if index == 1:
            rows = [[one, t], [one, t + 1]]
        else:
            rows = [[t + 1, t], [one, one]]
        self.index = index
        self.field = F
        self.matrix = GroupMatrix(rows, F)
        self._powers = {0: GroupMatrix.identity(2, F), 1: self.matrix,
                        -1: self.matrix.inverse()}

    @property
    def entries(self):
        (a, b), (c, d) = self.matrix.rows
        return a, b, c, d

    def power(self, k):
        """A^k as a GroupMatrix over F_q[t] (any integer k)."""
        if k not in self._powers:
            base = self._powers[1 if k > 0 else -1]
            step = 1 if k > 0 else -1
            j = max((e for e in self._powers if e * step > 0 and abs(e) < abs(k)), key=abs)
            m = self._powers[j]
            while j != k:
                m = m * base
                j += step
                self._powers[j] = m
        return self._powers[k]

    def eigen(self, prec=DEFAULT_PRECISION):
        return banach_eigen(self, prec)

    def __eq__(self, other):
        return isinstance(other, AnchorMatrix) and (self.index, self.field) == (other.index,
                                                                                 other.field)

    def __hash__(self):
        return hash(('anchor', self.index, self.field))

    def __repr__(self):
        return f'AnchorMatrix(A{self.index}, q={self.field.q})'


@lru_cache(maxsize=None)
def anchor(index, field):
    """Shared AnchorMatrix instance for (index, field)."""
    F = get_field(field) if isinstance(field, int) else field
    return AnchorMatrix(index, F)


# eigendata ---------------------------------------------------------------------------------
@dataclass(frozen=True)
class EigenData:
    """Eigenvalues and eigenvectors of an anchor in F_q((1/t)).

    ``w`` gives the expanding column eigenvector (w, 1); ``steps`` holds the
    valuations nu_inf(w_{k+1} - w_k) of the Banach iteration.
    """
    anchor_index: int
    q: int
    prec: int
    w: LaurentSeries
    lam_plus: LaurentSeries
    lam_minus: LaurentSeries
    steps: tuple = ()
    residual_exponent: int = 0
    left_plus: tuple = dc_field(default=(), repr=False)
    left_minus: tuple = dc_field(default=(), repr=False)

    def contraction_drops(self):
        """Valuation gains between consecutive iteration differences."""
        return [b - a for a, b in zip(self.steps, self.steps[1:])]


def _mobius_a1(z, t, t1):
    # f(z) = (z + t) / (z + t + 1)
    return (z + t) / (z + t1)


def _norm_exp(s):
    """log_q |s| as an upper bound: -(prec + 1) for a series that is zero at its precision."""
    return -(s.prec + 1) if s.is_zero() else -s.val


@lru_cache(maxsize=None)
def _banach_a1(field, prec):
    F = field
    work = prec + 4
    t = LaurentSeries.monomial(F, 1, 1, work)
    t1 = t + LaurentSeries.monomial(F, 1, 0, work)
    w = LaurentSeries.zero(F, work)
    steps = []
    while True:
        nxt = _mobius_a1(w, t, t1).truncate(work)
        d = nxt - w
        w = nxt
        if d.is_zero() or d.val > prec + 2:
            break
        steps.append(d.val)
    return w.truncate(prec + 2), tuple(steps)


@lru_cache(maxsize=256)
def banach_eigen(anc, prec=DEFAULT_PRECISION):
    """Eigendata of an anchor through t^-prec via the Banach iteration.

    For A_1 the Moebius map f(z) = (z + t)/(z + t + 1) contracts the unit
    ball of F_q((1/t)) by exactly q^-2; its fixed point w gives the
    eigenvector (w, 1) with eigenvalue w + t + 1.  A_2 = U A_1 U^-1 with
    U = e_{1,2}(t), so its eigenvector is (w + t, 1) with the same eigenvalue.
    """
    if prec < 1:
        raise InvalidArgument('precision must be >= 1')
    if not isinstance(anc, AnchorMatrix):
        raise InvalidArgument('banach_eigen needs an AnchorMatrix')
    F = anc.field
    w, steps = _banach_a1(F, prec)
    work = w.prec
    t = LaurentSeries.monomial(F, 1, 1, work)
    one = LaurentSeries.monomial(F, 1, 0, work)
    lam_plus = w + t + one
    if anc.index == 2:
        w = w + t
    trace = t + one.scale(F.from_int(2)) if F.p != 2 else t
    lam_minus = trace - lam_plus
    a, b, c, d = (embed(e, work) for e in anc.entries)
    res1 = a * w + b - lam_plus * w
    res2 = c * w + d - lam_plus
    resid = max(_norm_exp(res1), _norm_exp(res2))
    left_plus = (c, lam_plus - a)
    left_minus = (c, lam_minus - a)
    return EigenData(anc.index, F.q, prec, w.truncate(prec), lam_plus.truncate(prec),
                     lam_minus.truncate(prec), steps, resid, left_plus, left_minus)


# non-contracting cones ----------------------------------------------------------------------
def _as_series(x, prec):
    if isinstance(x, LaurentSeries):
        return x.truncate(prec)
    return embed(x, prec)


def _is_exact_zero(x):
    return not isinstance(x, LaurentSeries) and not x


def _vec_log_norm(v):
    return max(-e.valuation() for e in v if not e.is_zero())


@lru_cache(maxsize=256)
def _gap_inverse(anc, prec):
    ed = banach_eigen(anc, prec)
    return (ed.lam_plus - ed.lam_minus).inverse()


def eigencoordinates(v, anc, prec=DEFAULT_PRECISION):
    """(alpha_plus, alpha_minus) with v = alpha_plus l_plus + alpha_minus l_minus.

    l_plus, l_minus are the left (row) eigenvectors (c, lambda - a) of
    A = [[a, b], [c, d]].  Raises PrecisionExhausted when a coordinate is
    zero at the working precision.
    """
    ed = banach_eigen(anc, prec)
    v1, v2 = (_as_series(x, prec) for x in v)
    # both anchors have c = 1, so v1 is already the l-coordinate sum
    s = v1 if anc.entries[2].is_one() else v1 / ed.left_plus[0]
    lm = ed.left_minus[1]
    ap = (v2 - s * lm) * _gap_inverse(anc, prec)
    am = s - ap
    ap.valuation()
    am.valuation()
    return ap, am, ed


def cone_margin(v, anc, prec=None, kmin=None, kmax=None):
    """min over integers kmin <= k <= kmax of log_q ||v A^k|| - log_q ||v|| (an integer <= 0).

    Row vector v = (v1, v2); a missing bound means unbounded on that side.
    In eigencoordinates log ||v A^k|| is the V-shaped function
    max(A0 + k, B0 - k) except where the two terms tie, and the tie (if
    any) is evaluated exactly.  Precision is raised automatically for
    exact inputs; series inputs that cannot be resolved raise
    PrecisionExhausted.
    """
    if all(_is_exact_zero(x) for x in v):
        return 0
    exact = all(isinstance(x, (Poly, LaurentPoly, RationalFunc)) for x in v)
    if prec is None:
        size = max((_exact_deg(x) for x in v), default=0) if exact else 0
        # rounded up so that cached eigendata is shared between nearby sizes
        prec = max(DEFAULT_PRECISION, 32 * ((2 * size + 16 + 31) // 32))
    tries = 4 if exact else 1
    for attempt in range(tries):
        try:
            ap, am, ed = eigencoordinates(v, anc, prec)
            break
        except PrecisionExhausted:
            if attempt == tries - 1:
                raise
            prec *= 2
    A0 = -ap.valuation() + _vec_log_norm(ed.left_plus)
    B0 = -am.valuation() + _vec_log_norm(ed.left_minus)
    vs = [_as_series(x, prec) for x in v]
    norm_v = _vec_log_norm(vs)
    diff = B0 - A0
    cands = {diff // 2, -(-diff // 2)}
    if kmin is not None:
        cands = {max(k, kmin) for k in cands} | {kmin}
    if kmax is not None:
        cands = {min(k, kmax) for k in cands} | {kmax}
    low = None
    for k in cands:
        if (kmin is not None and k < kmin) or (kmax is not None and k > kmax):
            continue
        if A0 + k == B0 - k:
            val = _log_norm_times_power(v, vs, anc, k, exact)
        else:
            val = max(A0 + k, B0 - k)
        low = val if low is None else min(low, val)
    return low - norm_v


def _exact_deg(x):
    if isinstance(x, RationalFunc):
        return max(x.num.deg, x.den.deg, 0)
    if isinstance(x, LaurentPoly):
        return 0 if not x else max(abs(x.deg), abs(x.low))
    return max(x.deg, 0)


def _log_norm_times_power(v, vs, anc, k, exact):
    P = anc.power(k)
    if exact:
        vv = [x if not isinstance(x, Poly) else LaurentPoly(x) for x in v]
        if all(isinstance(x, LaurentPoly) for x in vv):
            out = []
            for j in range(2):
                e = vv[0] * P.rows[0][j] + vv[1] * P.rows[1][j]
                if e:
                    out.append(e.deg)
            return max(out)
    out = []
    for j in range(2):
        e = vs[0] * P.rows[0][j] + vs[1] * P.rows[1][j]
        if not e.is_zero():
            out.append(-e.val)
    if not out:
        raise PrecisionExhausted('v A^k vanishes at the working precision')
    return max(out)


def nc_cone_test(v, c, anc, kmax=None, prec=None, nonnegative=False):
    """Membership of the row vector v in NC_c(A) u {0}.

    NC_c(A) = {v : ||v A^k|| > c ||v|| for every power k in the range}.
    The range is all of Z by default (the cyclic group <A>), |k| <= kmax
    when kmax is given, and 0 <= k (<= kmax) when ``nonnegative`` is set.
    The answer is certified through eigencoordinates, so no power is
    ever enumerated.
    """
    c = Fraction(c)
    if not 0 < c < 1:
        raise InvalidArgument('cone constant must lie in (0, 1)')
    if all(_is_exact_zero(x) for x in v):
        return True
    kmin = 0 if nonnegative else (None if kmax is None else -kmax)
    margin = cone_margin(v, anc, prec, kmin, kmax)
    return Fraction(anc.field.q) ** margin > c


def nc_cone_direct(v, c, anc, kmax, prec=DEFAULT_PRECISION):
    """Finite check of ||v A^k|| > c ||v|| for |k| <= kmax by direct evaluation."""
    c = Fraction(c)
    vs = [_as_series(x, prec) for x in v]
    if all(x.is_zero() for x in vs):
        return True
    norm_v = _vec_log_norm(vs)
    q = anc.field.q
    for k in range(-kmax, kmax + 1):
        P = anc.power(k)
        out = []
        for j in range(2):
            e = vs[0] * P.rows[0][j] + vs[1] * P.rows[1][j]
            if not e.is_zero():
                out.append(-e.val)
        if not out:
            raise PrecisionExhausted(f'v A^{k} vanishes at the working precision')
        if not Fraction(q) ** (max(out) - norm_v) > c:
            return False
    return True


def cone_constants(q):
    """Candidate cone constants in scan order: 1/q^2, then 1/q, then 1/q^3."""
    return [Fraction(1, q ** 2), Fraction(1, q), Fraction(1, q ** 3)]


def choose_anchor(v, field, kmin=None, kmax=None):
    """(anchor index, c0, margins) with v in NC_{c0}(A_index) over the power range.

    c0 is scanned in the order of ``cone_constants``; among anchors that
    pass, the one with the larger margin is taken.  Raises
    ConstructionFailure if no scanned constant works for either anchor.
    """
    F = get_field(field) if isinstance(field, int) else field
    margins = {i: cone_margin(v, anchor(i, F), None, kmin, kmax) for i in (1, 2)}
    return select_anchor(margins, F.q)


def select_anchor(margins, q):
    """(index, c0, margins) from precomputed cone margins {1: m1, 2: m2}."""
    order = sorted((1, 2), key=lambda i: (-margins[i], i))
    for c0 in cone_constants(q):
        for i in order:
            if Fraction(q) ** margins[i] > c0:
                return i, c0, margins
    raise ConstructionFailure('vector lies in no scanned non-contracting cone', stage='cone',
                              margins=margins)


# digits and lamplighter words ----------------------------------------------------------------
def _laurent_digits(p, field):
    """Coefficients of p(s + 1/s - 2) as {k: code}, with |k| <= deg p."""
    F = field
    u = (LaurentPoly.monomial(F, 1, 1) + LaurentPoly.monomial(F, 1, -1)
         - LaurentPoly.monomial(F, F.from_int(2), 0))
    acc = LaurentPoly.zero(F)
    for c in reversed(p.coeffs):
        acc = acc * u + LaurentPoly.monomial(F, c, 0)
    return {k: a for k, a in acc.terms()}


def closed_form_digits(x, y, field):
    """Digits {k: (alpha_k, beta_k)} with sum_k A^k (alpha_k, beta_k)^T = (x, y)^T.

    Valid for both anchors since both have trace t + 2.
    """
    dx = _laurent_digits(x, field)
    dy = _laurent_digits(y, field)
    return {k: (dx.get(k, 0), dy.get(k, 0)) for k in sorted(set(dx) | set(dy))}


def eliminate_digits(x, y, anc, window):
    """Solve sum_{|k| <= window} A^k c_k = (x, y) by exact elimination; None if unsolvable."""
    F = anc.field
    ks = list(range(-window, window + 1))
    top = max(window, x.deg, y.deg, 0)
    rows = []
    rhs = []
    for comp, target in ((0, x), (1, y)):
        for e in range(top + 1):
            row = []
            for k in ks:
                P = anc.power(k)
                for j in range(2):
                    row.append(P.rows[comp][j][e])
            rows.append(row)
            rhs.append(target[e])
    z = solve_gf(rows, rhs, F)
    if z is None:
        return None
    return {k: (z[2 * n], z[2 * n + 1]) for n, k in enumerate(ks) if z[2 * n] or z[2 * n + 1]}


class LampEngine:
    """Words for translations in a semidirect product F_q[t]^2 x| <a> inside SL_3.

    ``a`` is the block letter realizing the anchor and ``slots`` the two
    (i, j) positions of the translation coordinates, chosen so that
    a T(v) a^-1 = T(A v).  Translation letters are e_{i,j}(alpha), alpha in F_q^*.
    """

    def __init__(self, anc, block_pos, slots):
        self.anchor = anc
        self.a = block(anc.index, block_pos)
        self.slots = slots

    def translation(self, c):
        F = self.anchor.field
        out = []
        for (i, j), v in zip(self.slots, c):
            if v:
                out.append(elem(i, j, LaurentPoly.monomial(F, v, 0)))
        return out

    def a_power(self, k):
        return [self.a] * k if k >= 0 else [self.a.inv()] * (-k)

    def word_from_digits(self, digits):
        """a^lo T(c_lo) a T(c_lo+1) ... a T(c_hi) a^-hi  =  T(sum_k A^k c_k)."""
        ks = [k for k, c in digits.items() if c[0] or c[1]]
        if not ks:
            return []
        lo, hi = min(ks), max(ks)
        word = self.a_power(lo)
        for k in range(lo, hi + 1):
            if k > lo:
                word.append(self.a)
            word.extend(self.translation(digits.get(k, (0, 0))))
        word.extend(self.a_power(-hi))
        return word

    def word(self, x, y, method='closed'):
        F = self.anchor.field
        x = _to_poly(x, F)
        y = _to_poly(y, F)
        if method == 'closed':
            return self.word_from_digits(closed_form_digits(x, y, F))
        if method == 'elimination':
            d = max(x.deg, y.deg, 0)
            for slack in range(2, MAX_SLACK + 1):
                digits = eliminate_digits(x, y, self.anchor, d + slack)
                if digits is not None:
                    return self.word_from_digits(digits)
            raise ConstructionFailure('digit system unsolvable within the slack bound',
                                      stage='digits', attempted_length=2 * (d + MAX_SLACK) + 1)
        raise InvalidArgument(f'unknown digit method {method!r}')


def _to_poly(x, F):
    if isinstance(x, LaurentPoly):
        return x.to_poly()
    if isinstance(x, int):
        return Poly.const(F, F.from_int(x))
    return x


def sol_engine(index, field):
    """Engine for Gamma_i: block A_i on coordinates 2, 3, translations e_{2,1}, e_{3,1}."""
    return LampEngine(anchor(index, field), 2, ((2, 1), (3, 1)))


def lamp_engine(field, index=1):
    """Engine for upper unipotents: block A_i on coordinates 1, 2, translations e_{1,3}, e_{2,3}."""
    return LampEngine(anchor(index, field), 1, ((1, 3), (2, 3)))


def short_unipotent_word(x, y, index, field=None, method='closed'):
    """Word for [[1,0,0],[x,1,0],[y,0,1]] over {block A_i, e_{2,1}(alpha), e_{3,1}(beta)}^+-1.

    Length is about 8 (1 + max(deg x, deg y)).
    """
    if field is None:
        field = x.field
    return sol_engine(index, field).word(x, y, method)


def unipotent_lower(x, y, field):
    """The matrix [[1,0,0],[x,1,0],[y,0,1]]."""
    F = field
    z, o = Poly.zero(F), Poly.one(F)
    return GroupMatrix([[o, z, z], [_to_poly(x, F), o, z], [_to_poly(y, F), z, o]], F)


def unipotent_upper(x, y, field):
    """The matrix [[1,0,x],[0,1,y],[0,0,1]]."""
    F = field
    z, o = Poly.zero(F), Poly.one(F)
    return GroupMatrix([[o, z, _to_poly(x, F)], [z, o, _to_poly(y, F)], [z, z, o]], F)

"""Certified external trajectories in SL_3(F_q[t]).

A trajectory from g to h is a word w with g * eval(w) = h.  Its
certificate records the word together with the smallest proxy distance
rho = 1 + max entry degree met along the way (endpoints included), so the
avoidance and linearity claims can be checked by re-walking the word.

The pipeline connecting two arbitrary elements is

    reduce_to_unipotent(g1) + connect_unipotents + reversed reduce_to_unipotent(g2)

where the reduction moves an element to an upper unipotent
[[1, 0, x], [0, 1, y], [0, 0, 1]] of comparable size by column
operations.  Each column operation col_tau += sum_s p_s col_s with a
polynomial coefficient is realized by the lower unipotent word of
``fqdiv.sol`` conjugated by a signed permutation (``tool_op``).  While
that word runs, the two source columns are multiplied by powers of an
anchor, and the cone margin of their rows certifies a lower bound for
rho along the way.
"""

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import LaurentPoly, Poly, distinct_prime_divisors, get_field, poly_gcdext
from .errors import ConstructionFailure, InvalidArgument, PreconditionError
from .matgroup import (GroupMatrix, apply_to_columns, block, elem, entry_deg, eval_word,
                       generating_set, invert_word, letter_matrix, mono, proxy_dist, walk,
                       word_from_json, word_to_json)
from .sol import (anchor, closed_form_digits, cone_margin, lamp_engine, select_anchor,
                  sol_engine)

EPS = Fraction(1, 2)
N = 3


# certificates ---------------------------------------------------------------------------------
@dataclass
class TrajectoryCertificate:
    """A word from ``start`` to ``end`` with its measured length and prefix-minimum proxy."""
    start: GroupMatrix
    end: GroupMatrix
    word: list
    min_prefix_proxy: int
    endpoint_proxies: tuple
    stage_breakdown: list = dc_field(default_factory=list)
    constants: dict = dc_field(default_factory=dict)
    metric: str = 'rho'

    @property
    def length(self):
        return len(self.word)

    def verify(self):
        """Re-walk the word: endpoint exactness and the recorded prefix minimum."""
        proxy = PROXIES[self.metric]
        low = None
        last = self.start
        for g in walk(self.start, self.word):
            r = proxy(g)
            low = r if low is None else min(low, r)
            last = g
        return last == self.end and low == self.min_prefix_proxy

    def avoidance_ratio(self):
        """min prefix proxy over the smaller endpoint proxy."""
        return Fraction(self.min_prefix_proxy, min(self.endpoint_proxies))

    def to_dict(self):
        d = {
            'q': self.start.field.q,
            'metric': self.metric,
            'start': str(self.start),
            'end': str(self.end),
            'word': json.loads(word_to_json(self.word)),
            'length': self.length,
            'min_prefix_proxy': self.min_prefix_proxy,
            'endpoint_proxies': list(self.endpoint_proxies),
            'stage_breakdown': self.stage_breakdown,
            'constants': {k: str(v) if isinstance(v, Fraction) else v
                          for k, v in self.constants.items()},
        }
        if self.metric == 'product':
            d['endpoint_spreads'] = self._spreads_dict()
        return d

    def to_json(self):
        return json.dumps(self.to_dict())

    def _spreads_dict(self):
        return [list(laurent_spreads(self.start)), list(laurent_spreads(self.end))]

    @classmethod
    def from_dict(cls, d):
        F = get_field(d['q'])
        metric = d.get('metric', 'rho')
        ring = 'laurent' if metric == 'product' else 'poly'
        start = GroupMatrix.parse(d['start'], F, ring)
        end = GroupMatrix.parse(d['end'], F, ring)
        word = word_from_json(json.dumps(d['word']), F)
        consts = {}
        for k, v in d.get('constants', {}).items():
            try:
                consts[k] = Fraction(v) if isinstance(v, str) else v
            except ValueError:
                consts[k] = v
        return cls(start, end, word, d['min_prefix_proxy'], tuple(d['endpoint_proxies']),
                   list(d.get('stage_breakdown', [])), consts, metric)

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))


def laurent_spreads(g):
    """(spread at infinity, spread at 0): the clamped pole orders of the entries of g."""
    s_inf = s_0 = 0
    for r in g.rows:
        for e in r:
            if e:
                if isinstance(e, LaurentPoly):
                    s_inf = max(s_inf, e.deg)
                    s_0 = max(s_0, -e.low)
                else:
                    s_inf = max(s_inf, e.deg)
    return s_inf, s_0


def product_proxy(g):
    """1 + spread_inf + spread_0; equals rho on polynomial matrices."""
    a, b = laurent_spreads(g)
    return 1 + a + b


PROXIES = {'rho': proxy_dist, 'product': product_proxy}


def _cols_rho(cols):
    return 1 + max(entry_deg(e) for c in cols for e in c)


def _cols_product(cols):
    s_inf = s_0 = 0
    for c in cols:
        for e in c:
            if e:
                s_inf = max(s_inf, e.deg)
                s_0 = max(s_0, -e.low)
    return 1 + s_inf + s_0


class PathBuilder:
    """Walks a growing word from a start matrix, keeping per-stage prefix minima.

    With metric 'rho' the walk runs over F_q[t]; with 'product' over
    F_q[t, 1/t] and the proxy is the two-place product proxy.
    """

    def __init__(self, start, metric='rho'):
        ring = 'laurent' if metric == 'product' else 'poly'
        if start.ring != ring:
            start = start.to_laurent() if ring == 'laurent' else start.to_poly()
        self.metric = metric
        self.ring = ring
        self._proxy = _cols_product if metric == 'product' else _cols_rho
        self.start = start
        self.field = start.field
        self.cols = start.columns()
        self.word = []
        self.tags = []
        self.stages = []
        self.rho = self._proxy(self.cols)
        self.low = self.rho

    def current(self):
        return self.start.with_columns([list(c) for c in self.cols])

    def _rho_now(self):
        return self._proxy(self.cols)

    def push(self, letters, stage):
        """Append letters; returns the minimum proxy met while walking them."""
        seg_low = None
        for letter in letters:
            apply_to_columns(self.cols, letter, self.field, self.ring)
            r = self._rho_now()
            seg_low = r if seg_low is None else min(seg_low, r)
        self.word.extend(letters)
        self.tags.extend([stage] * len(letters))
        if seg_low is not None:
            self.low = min(self.low, seg_low)
            self.rho = self._rho_now()
        if letters:
            if self.stages and self.stages[-1]['stage'] == stage:
                rec = self.stages[-1]
                rec['length'] += len(letters)
                rec['min_proxy'] = min(rec['min_proxy'], seg_low)
            else:
                self.stages.append({'stage': stage, 'length': len(letters),
                                    'min_proxy': seg_low})
        return seg_low

    def reduced(self):
        """A new builder walking the freely reduced word (adjacent inverse letters cancelled)."""
        return PathBuilder.from_tagged(self.start, zip(self.word, self.tags), self.metric)

    @classmethod
    def from_tagged(cls, start, tagged, metric='rho'):
        """Walk the free reduction of a sequence of (letter, stage) pairs from ``start``."""
        stack = []
        for letter, tag in tagged:
            if stack and stack[-1][0] == letter.inv():
                stack.pop()
            else:
                stack.append((letter, tag))
        out = cls(start, metric)
        i = 0
        while i < len(stack):
            j = i
            while j < len(stack) and stack[j][1] == stack[i][1]:
                j += 1
            out.push([l for l, _ in stack[i:j]], stack[i][1])
            i = j
        return out

    def certificate(self, constants=None):
        end = self.current()
        proxy = PROXIES[self.metric]
        return TrajectoryCertificate(self.start, end, list(self.word), self.low,
                                     (proxy(self.start), proxy(end)),
                                     [dict(s) for s in self.stages], dict(constants or {}),
                                     self.metric)


# the column-operation tool ---------------------------------------------------------------------
def _as_poly(x, F):
    if isinstance(x, Poly):
        return x
    if isinstance(x, LaurentPoly):
        return x.to_poly()
    return Poly.const(F, F.from_int(x))


def _arrangement(target, sources, F):
    """Signed permutation letter placing column ``target`` first, det 1; None if identity."""
    perm = [target] + list(sources)
    inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
    signs = [1, 1, 1]
    if inversions % 2:
        signs[1] = F.neg(1)
    if perm == [0, 1, 2]:
        return None
    return mono(perm, signs)


def _row_margins(rows, F, lo, hi):
    """{(anchor, row): cone margin over lo <= k <= hi} for the nonzero rows."""
    out = {}
    for j, r in enumerate(rows):
        if r[0] or r[1]:
            for i in (1, 2):
                out[i, j] = cone_margin(r, anchor(i, F), None, lo, hi)
    return out


def _row_score(rows, margins, i):
    """Certified lower bound for max_j deg(row_j A_i^k) over the margin's power range."""
    return max((max(entry_deg(e) for e in rows[j]) + m
                for (a, j), m in margins.items() if a == i), default=-1)


def tool_op(pb, target, coeffs, stage, strict=False):
    """Right-multiply by I + sum_s p_s E_{s,target}: column ``target`` += p_s column s.

    Realized as M * (lower unipotent word) * M^-1 with M a signed
    permutation putting the target column first.  Returns a dict with the
    anchor used, the cone constant, and the certified proxy bound for the
    segment; raises ConstructionFailure if the walked segment dips below
    that bound.
    """
    F = pb.field
    if target not in range(3):
        raise InvalidArgument('target column must be 0, 1 or 2')
    coeffs = {s: _as_poly(p, F) for s, p in coeffs.items() if s != target}
    coeffs = {s: p for s, p in coeffs.items() if p}
    info = {'stage': stage, 'anchor': None, 'c0': None, 'bound': None, 'cone_miss': False}
    if not coeffs:
        return info
    sources = [s for s in range(3) if s != target]
    M = _arrangement(target, sources, F)
    zero, one = Poly.zero(F), Poly.one(F)
    U = [[one if i == j else zero for j in range(3)] for i in range(3)]
    for s, p in coeffs.items():
        U[s][target] = p
    U = GroupMatrix(U, F)
    Mm = letter_matrix(M, 3, F) if M is not None else GroupMatrix.identity(3, F)
    theta = Mm.inverse() * U * Mm
    th = theta.rows
    if not (th[0][0] == one and not th[0][1] and not th[0][2] and th[1][1] == one
            and th[2][2] == one and not th[1][2] and not th[2][1]):
        raise ConstructionFailure('conjugated operation is not lower unipotent', stage=stage)
    x, y = th[1][0], th[2][0]
    digits = closed_form_digits(x, y, F)
    ks = [k for k, c in digits.items() if c[0] or c[1]]
    lo, hi = min(min(ks), 0), max(max(ks), 0)

    beta = pb.current()
    if M is not None:
        beta = beta * Mm
    rows = [(r[1], r[2]) for r in beta.rows]
    # the row holding the largest entry of the two source columns
    jstar = max(range(3), key=lambda j: (max(entry_deg(e) for e in rows[j]), -j))
    margins = _row_margins(rows, F, lo, hi)
    try:
        idx, c0, _ = select_anchor({i: margins[i, jstar] for i in (1, 2)}, F.q)
    except ConstructionFailure:
        if strict:
            raise
        idx = max((1, 2), key=lambda i: (_row_score(rows, margins, i), -i))
        c0 = None
        info['cone_miss'] = True
    bound = 1 + _row_score(rows, margins, idx)
    word = sol_engine(idx, F).word_from_digits(digits)
    letters = ([M] if M is not None else []) + word + ([M.inv()] if M is not None else [])
    seg_low = pb.push(letters, stage)
    if seg_low is not None and seg_low < bound:
        raise ConstructionFailure('prefix proxy fell below the cone-certified bound',
                                  stage=stage, bound=bound, observed=seg_low)
    info.update(anchor=idx, c0=c0, bound=bound)
    return info


def connect_unipotent_right(alpha, x, y, eps=EPS, strict=True):
    """Certificate from alpha to alpha * [[1,0,0],[x,1,0],[y,0,1]].

    Requires an eps-large entry in column 3 of alpha.
    """
    alpha = alpha.to_poly() if alpha.ring != 'poly' else alpha
    if alpha.n != 3:
        raise InvalidArgument('the trajectory pipeline is written for n = 3')
    F = alpha.field
    if not _column_has_large(alpha.rows, 2, eps):
        raise PreconditionError('column 3 has no eps-large entry')
    x, y = _as_poly(x, F), _as_poly(y, F)
    pb = PathBuilder(alpha)
    info = tool_op(pb, 0, {1: x, 2: y}, 'tool', strict=strict)
    consts = {'anchor': info['anchor'], 'c0': info['c0'], 'certified_bound': info['bound']}
    return pb.certificate(consts)


# the reduction to an upper unipotent ----------------------------------------------------------
def _mdeg(rows):
    return max(entry_deg(e) for r in rows for e in r)


def _column_has_large(rows, j, eps):
    m = _mdeg(rows)
    for r in rows:
        e = r[j]
        if (entry_deg(e) >= eps * m) if e else m == 0:
            return True
    return False


def is_upper_unipotent(g):
    r = g.rows
    one = g.one_entry()
    return (r[0][0] == one and r[1][1] == one and r[2][2] == one and not r[0][1]
            and not r[1][0] and not r[2][0] and not r[2][1])


def _euclid_ops(B, F):
    """Column operations (src, dst, p) on two columns reducing B in SL_2(F_q[t]) to I."""
    (a, b), (c, d) = [list(r) for r in B]
    ops = []

    def do(src, dst, p):
        nonlocal a, b, c, d
        if not p:
            return
        ops.append((src, dst, p))
        if dst == 0:
            a, c = a + p * b, c + p * d
        else:
            b, d = b + p * a, d + p * c

    while a and b:
        if a.deg >= b.deg:
            do(1, 0, -(a // b))
        else:
            do(0, 1, -(b // a))
    one = Poly.one(F)
    if not a:
        do(1, 0, one)
        do(0, 1, -one)
    # row 1 is now (u, 0) with u a unit
    u = a.lc
    if a != one:
        do(0, 1, Poly.const(F, F.inv(u)))
        do(1, 0, Poly.const(F, F.sub(1, u)))
        do(0, 1, -one)
    do(1, 0, -c)
    if not (a == one and not b and not c and d == one):
        raise ConstructionFailure('SL2 reduction did not reach the identity', stage='claim4')
    return ops


def _apply_op_rows(rows, src, dst, p):
    out = [list(r) for r in rows]
    for r in out:
        if r[src]:
            r[dst] = r[dst] + p * r[src]
    return out


def reduce_to_unipotent(alpha, eps=EPS, strict=False):
    """(alpha', certificate) with alpha' = [[1,0,x],[0,1,y],[0,0,1]] reached from alpha.

    Stages: swap/lift, claim1, bridge, claim2, claim3, block, claim4.
    The certificate's constants hold rho(alpha)/rho(alpha') and the number
    of column operations whose anchor came from the fallback score rather
    than the cone scan.
    """
    pb, misses = _reduction_path(alpha, eps, strict)
    pb = pb.reduced()
    end = pb.current()
    consts = {'size_ratio': Fraction(proxy_dist(pb.start), proxy_dist(end)),
              'cone_misses': misses}
    return end, pb.certificate(consts)


def _reduction_path(alpha, eps, strict):
    alpha = alpha.to_poly() if alpha.ring != 'poly' else alpha
    if alpha.n != 3:
        raise InvalidArgument('the trajectory pipeline is written for n = 3')
    F = alpha.field
    pb = PathBuilder(alpha)
    misses = 0

    def op(target, coeffs, stage):
        nonlocal misses
        info = tool_op(pb, target, coeffs, stage, strict=strict)
        misses += info['cone_miss']

    def rows():
        return [list(r) for r in pb.current().rows]

    if not is_upper_unipotent(alpha):
        # (1) an eps-large nonzero entry at (3,3)
        R = rows()
        m = _mdeg(R)
        bottom = [j for j in range(3) if R[2][j] and entry_deg(R[2][j]) >= eps * m]
        if bottom:
            k = max(bottom, key=lambda j: (entry_deg(R[2][j]), j))
        else:
            mcol = max(range(3), key=lambda j: max(entry_deg(R[i][j]) for i in range(3)))
            s = next(j for j in sorted(range(3), key=lambda j: j == mcol) if R[2][j])
            k = next(j for j in range(3) if j not in (s, mcol))
            D = m
            Nexp = max(D + 1, math.ceil(eps * D / (1 - eps)))
            op(k, {s: Poly.monomial(F, 1, Nexp)}, 'lift')
        if k != 2:
            perm = [0, 1, 2]
            perm[k], perm[2] = 2, k
            signs = [1, 1, 1]
            signs[k] = F.neg(1)
            pb.push([mono(perm, signs)], 'swap')

        # (2) claim 1: a' != 0, then gcd(a', b') = 1
        a, b, c = rows()[2]
        if not a:
            op(0, {2: Poly.one(F)}, 'claim1')
            a, b, c = rows()[2]
        if poly_gcdext(a, b)[0] != Poly.one(F):
            mfac = Poly.one(F)
            for p in distinct_prime_divisors(a):
                if (b % p) and (c % p):
                    mfac = mfac * p
            op(1, {2: mfac}, 'claim1')
        a, b, c = rows()[2]
        if poly_gcdext(a, b)[0] != Poly.one(F):
            raise ConstructionFailure('gcd(a\', b\') != 1 after claim 1', stage='claim1')

        # (3) bridge
        if not b or b.deg < c.deg:
            op(1, {0: Poly.monomial(F, 1, c.deg)}, 'bridge')
            a, b, c = rows()[2]

        # (4) claim 2: bottom row (a', -c, b''), then a 1 at (3,2)
        pb.push([mono((0, 2, 1), (1, F.neg(1), 1))], 'claim2')
        # X a' + Y b'' = c + 1 with deg X < deg b'' (the reduced Bezout solution)
        g, u, v = poly_gcdext(a, b)
        c1 = c + Poly.one(F)
        X = (c1 * u) % b if b.deg > 0 else Poly.zero(F)
        Y = (c1 - X * a) // b
        op(1, {0: X, 2: Y}, 'claim2')
        if rows()[2][1] != Poly.one(F):
            raise ConstructionFailure('claim 2 did not place 1 at (3,2)', stage='claim2')

        # (5) claim 3: bottom row (0, 1, b''), then P, then (0, 1, 1)
        a = rows()[2][0]
        op(0, {1: -a}, 'claim3')
        b2 = rows()[2][2]
        P = _choose_p(rows(), b2, eps, F)
        op(1, {0: P}, 'claim3')
        op(2, {1: Poly.one(F) - b2}, 'claim3')

        # (6) block form
        pb.push([elem(3, 2, LaurentPoly.monomial(F, F.neg(1), 0))], 'block')
        R = rows()
        if R[2] != [Poly.zero(F), Poly.zero(F), Poly.one(F)]:
            raise ConstructionFailure('bottom row is not (0, 0, 1)', stage='block')

        # (7) claim 4: reduce the SL_2 block B to the identity
        B = [R[0][:2], R[1][:2]]
        ops = _euclid_ops(B, F)
        if not _ops_keep_large(R, ops, eps):
            k = _a1_power_for_unique_max(R, F)
            if k:
                pb.push([block(1, 1)] * k, 'claim4')
            pb.push([elem(1, 3, LaurentPoly.one(F))], 'claim4')
            R = rows()
            ops = _euclid_ops([R[0][:2], R[1][:2]], F)
        for src, dst, p in ops:
            op(dst, {src: p}, 'claim4')

    if not is_upper_unipotent(pb.current()):
        raise ConstructionFailure('reduction did not end at an upper unipotent', stage='claim4')
    return pb, misses


def _choose_p(R, b2, eps, F):
    """Smallest P (0 first, then monomials by exponent and coefficient) keeping column 3 large."""
    one = Poly.one(F)
    D = _mdeg(R)
    cands = [Poly.zero(F)]
    for k in range(0, 4 * D + 9):
        for a in F.units:
            cands.append(Poly.monomial(F, a, k))
    for P in cands:
        S = _apply_op_rows(R, 0, 1, P)
        S = _apply_op_rows(S, 1, 2, one - b2)
        if _column_has_large(S, 2, eps):
            return P
    raise ConstructionFailure('no small P keeps column 3 eps-large', stage='claim3')


def _ops_keep_large(R, ops, eps):
    S = R
    for src, dst, p in ops:
        S = _apply_op_rows(S, src, dst, p)
        if not _column_has_large(S, 2, eps):
            return False
    return True


def _a1_power_for_unique_max(R, F):
    """Smallest k >= 0 with the maximal degree of diag(A_1^k, 1)-image met only in column 1."""
    D = max(_mdeg(R), 1)
    A = anchor(1, F)
    for k in range(0, 2 * D + 1):
        P = A.power(k).rows
        S = [[r[0] * P[0][0] + r[1] * P[1][0], r[0] * P[0][1] + r[1] * P[1][1], r[2]]
             for r in R]
        m = _mdeg(S)
        hits = [(i, j) for i in range(3) for j in range(3) if entry_deg(S[i][j]) == m]
        if len(hits) == 1 and hits[0][1] == 0:
            return k
    raise ConstructionFailure('no A_1 power isolates the maximal entry in column 1',
                              stage='claim4', bound=2 * D)


# connecting upper unipotents -------------------------------------------------------------------
def _upper_coords(g):
    if not is_upper_unipotent(g):
        raise PreconditionError('expected [[1,0,x],[0,1,y],[0,0,1]]')
    return g.rows[0][2], g.rows[1][2]


def connect_unipotents(g, h):
    """Certificate from one upper unipotent to another by a lamplighter sweep.

    The word is a^lo T(c_lo) a T(c_lo+1) ... a T(c_hi) a^-hi, where the
    digits c_k are those of the difference (x' - x, y' - y) in the
    closed-form expansion sum_k A_1^k c_k; the first and last blocks of
    a-letters carry the cursor out to the sweep window and back.
    """
    g = g.to_poly() if g.ring != 'poly' else g
    h = h.to_poly() if h.ring != 'poly' else h
    F = g.field
    x, y = _upper_coords(g)
    x2, y2 = _upper_coords(h)
    pb = PathBuilder(g)
    for letters, stage in _lamp_segments(x2 - x, y2 - y, F):
        pb.push(letters, stage)
    if pb.current() != h:
        raise ConstructionFailure('lamp word missed its endpoint', stage='lamp')
    return pb.certificate()


def _lamp_segments(dx, dy, F):
    """The sweep word for the translation (dx, dy), split into escape, lamp and return."""
    digits = closed_form_digits(dx, dy, F)
    ks = [k for k, c in digits.items() if c[0] or c[1]]
    if not ks:
        return []
    eng = lamp_engine(F)
    word = eng.word_from_digits(digits)
    pre = len(eng.a_power(min(ks)))
    post = len(eng.a_power(-max(ks)))
    return [(word[:pre], 'escape'), (word[pre:len(word) - post], 'lamp'),
            (word[len(word) - post:], 'return')]


# the full connector ------------------------------------------------------------------------
def external_connect(g1, g2, eps=EPS, strict=False):
    """Certificate from g1 to g2 through two upper unipotents."""
    g1 = g1.to_poly() if g1.ring != 'poly' else g1
    g2 = g2.to_poly() if g2.ring != 'poly' else g2
    if g1.field != g2.field or g1.n != g2.n:
        raise InvalidArgument('endpoints must live in the same group')
    pb = PathBuilder(g1)
    if g1 == g2:
        return pb.certificate({'length_ratio': Fraction(0)})
    p1, m1 = _reduction_path(g1, eps, strict)
    p2, m2 = _reduction_path(g2, eps, strict)
    u1, u2 = p1.current(), p2.current()
    tagged = [(l, 'start:' + t) for l, t in zip(p1.word, p1.tags)]
    for letters, stage in _lamp_segments(u2.rows[0][2] - u1.rows[0][2],
                                         u2.rows[1][2] - u1.rows[1][2], g1.field):
        tagged.extend((l, stage) for l in letters)
    tagged.extend((l.inv(), 'end:' + t) for l, t in zip(reversed(p2.word), reversed(p2.tags)))
    pb = PathBuilder.from_tagged(g1, tagged)
    if pb.current() != g2:
        raise ConstructionFailure('concatenated word missed its endpoint', stage='concat')
    dist = proxy_dist(g1.inverse() * g2)
    consts = {
        'length_ratio': Fraction(len(pb.word), dist),
        'avoidance_ratio': Fraction(pb.low, min(proxy_dist(g1), proxy_dist(g2))),
        'size_ratio_start': Fraction(proxy_dist(g1), proxy_dist(u1)),
        'size_ratio_end': Fraction(proxy_dist(g2), proxy_dist(u2)),
        'cone_misses': m1 + m2,
    }
    return pb.certificate(consts)


# sampling and fitting -------------------------------------------------------------------------
def random_element(field, rho, rng, n=N, max_steps=None):
    """A random walk on S^{+-1} stopped when the proxy distance first equals ``rho``."""
    F = get_field(field) if isinstance(field, int) else field
    if rho < 1:
        raise InvalidArgument('target proxy must be >= 1')
    letters = generating_set(n, F)
    limit = max_steps or 400 * rho + 400
    while True:
        cols = GroupMatrix.identity(n, F).columns()
        for _ in range(limit):
            if 1 + max(entry_deg(e) for c in cols for e in c) == rho:
                return GroupMatrix.identity(n, F).with_columns(cols)
            apply_to_columns(cols, letters[rng.randrange(len(letters))], F, 'poly')


def random_word_element(field, length, rng, n=N):
    """Evaluation of a uniformly random word of the given length in S^{+-1}."""
    F = get_field(field) if isinstance(field, int) else field
    letters = generating_set(n, F)
    return eval_word([letters[rng.randrange(len(letters))] for _ in range(length)], n, F)


def fit_constants(certs, delta2=1):
    """Fitted (delta1, delta2, delta3) over non-trivial certificates.

    delta1 is the largest value with min_prefix_proxy >= delta1 * min endpoint
    proxy - delta2 on every certificate; delta3 the largest length over
    rho(g1^-1 g2).
    """
    d1 = None
    d3 = Fraction(0)
    for c in certs:
        if not c.word:
            continue
        r = Fraction(c.min_prefix_proxy + delta2, min(c.endpoint_proxies))
        d1 = r if d1 is None else min(d1, r)
        d3 = max(d3, Fraction(c.length, PROXIES[c.metric](c.start.inverse() * c.end)))
    return {'delta1': d1, 'delta2': Fraction(delta2), 'delta3': d3}

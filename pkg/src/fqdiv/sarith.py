"""Two places at once: SL_3 over F_q[t, 1/t] with S = {infinity, 0}.

The proxy for the distance from the identity is the product proxy

    1 + spread_inf(g) + spread_0(g),

where spread_v(g) = max(0, -min_ij v(g_ij)): the largest degree for the
place at infinity and the largest power of 1/t for the place at 0.

``birkhoff_factor`` writes g = g_minus * D * g_plus with g_minus over
F_q[1/t], D a diagonal of powers of t and g_plus over F_q[t].  The
connector ``external_connect_s`` uses it to split g1^-1 g2 = p * D * m
with p over F_q[t] and m over F_q[1/t], then walks three segments:

* stage 1 (tag ``plus``): right multiplication by p, a path inside the
  coset g1 * SL_3(F_q[t]) produced by the one-place connector;
* the diagonal (tag ``diag``): fixed six-letter words for diag(t, 1/t, 1)
  and diag(1, t, 1/t);
* stage 2 (tag ``minus``): right multiplication by m, the one-place
  connector conjugated by t -> 1/t.

Each one-place run is started from the F_q[t] part of a Birkhoff
factorization of the current point, so the word it returns avoids the
identity of that frame rather than an arbitrary point.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LaurentPoly, get_field, solve_gf
from .errors import ConstructionFailure, InvalidArgument
from .matgroup import LAURENT, GroupMatrix, apply_to_columns, elem, generating_set, letter_matrix
from .matgroup.letters import GenLetter
from .trajectories import (EPS, PathBuilder, TrajectoryCertificate, external_connect,
                           laurent_spreads, product_proxy)

N = 3


# the proxy -----------------------------------------------------------------------------------
@dataclass(frozen=True)
class ProductProxy:
    """Per-place spreads of a matrix and their total 1 + spread_inf + spread_0."""
    spread_inf: int
    spread_0: int

    @classmethod
    def of(cls, g):
        a, b = laurent_spreads(g)
        return cls(a, b)

    @property
    def total(self):
        return 1 + self.spread_inf + self.spread_0

    def to_dict(self):
        return {'spread_inf': self.spread_inf, 'spread_0': self.spread_0, 'total': self.total}


@dataclass(frozen=True)
class TwoPlaceProblem:
    """A pair of endpoints in SL_3(F_q[t, 1/t])."""
    g1: GroupMatrix
    g2: GroupMatrix

    def __post_init__(self):
        if self.g1.n != N or self.g2.n != N:
            raise InvalidArgument('the two-place connector is written for n = 3')
        if self.g1.field != self.g2.field:
            raise InvalidArgument('endpoints must share a field')
        object.__setattr__(self, 'g1', self.g1.to_laurent())
        object.__setattr__(self, 'g2', self.g2.to_laurent())


# Birkhoff factorization ----------------------------------------------------------------------
def _kernel_vector(rows, F):
    """A nonzero z with rows * z = 0 over F_q, or None."""
    n = len(rows[0])
    for k in range(n):
        others = [j for j in range(n) if j != k]
        sub = [[r[j] for j in others] for r in rows]
        rhs = [F.neg(r[k]) for r in rows]
        z = solve_gf(sub, rhs, F)
        if z is not None:
            out = [0] * n
            out[k] = 1
            for j, v in zip(others, z):
                out[j] = v
            return out
    return None


def _laurent_rows(rows, F):
    return GroupMatrix(rows, F, LAURENT, check=False)


def _constant_part(g):
    F = g.field
    return _laurent_rows([[LaurentPoly.monomial(F, e.coefficient(0), 0) if e else e for e in r]
                          for r in g.rows], F)


def diagonal(exps, field):
    """diag(t^e_1, ..., t^e_n) as a Laurent matrix."""
    if sum(exps) != 0:
        raise InvalidArgument('diagonal exponents must sum to 0')
    z = LaurentPoly.zero(field)
    n = len(exps)
    return _laurent_rows([[LaurentPoly.monomial(field, 1, exps[i]) if i == j else z
                           for j in range(n)] for i in range(n)], field)


def diagonal_exponents(D):
    return [D.rows[i][i].deg for i in range(D.n)]


def birkhoff_factor(g, absorb='plus'):
    """(g_minus, D, g_plus) with g = g_minus * D * g_plus.

    g_minus has entries in F_q[1/t], g_plus in F_q[t], both of determinant
    1, and D = diag(t^k_i) with sum k_i = 0.  After clearing denominators
    the matrix is column reduced over F_q[t]: while the leading column
    coefficients are dependent, the column of largest degree in a
    dependency loses its top coefficients, so the degree sum strictly
    drops.  When D is the identity the constant part of the factorization
    is free; ``absorb`` says which factor takes it ('plus' makes
    g_minus(inf) = I, 'minus' makes g_plus(0) = I).
    """
    if absorb not in ('plus', 'minus'):
        raise InvalidArgument("absorb must be 'plus' or 'minus'")
    g = g.to_laurent()
    F = g.field
    n = g.n
    lows = [e.low for r in g.rows for e in r if e]
    m = max(0, -min(lows))
    P = [[e.shifted(m) for e in r] for r in g.rows]
    one, zero = LaurentPoly.one(F), LaurentPoly.zero(F)
    Uinv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    while True:
        degs = [max(P[i][j].deg for i in range(n) if P[i][j]) for j in range(n)]
        lead = [[P[i][j].coefficient(degs[j]) if P[i][j] else 0 for j in range(n)]
                for i in range(n)]
        z = _kernel_vector(lead, F)
        if z is None:
            break
        k = max((j for j in range(n) if z[j]), key=lambda j: degs[j])
        zk = F.inv(z[k])
        for j in range(n):
            if j == k or not z[j]:
                continue
            f = LaurentPoly.monomial(F, F.mul(z[j], zk), degs[k] - degs[j])
            for i in range(n):
                if P[i][j]:
                    P[i][k] = P[i][k] + f * P[i][j]
            Uinv[j] = [a - f * b if b else a for a, b in zip(Uinv[j], Uinv[k])]
    exps = [d - m for d in degs]
    gm = _laurent_rows([[P[i][j].shifted(-degs[j]) for j in range(n)] for i in range(n)], F)
    gp = _laurent_rows(Uinv, F)
    D = diagonal(exps, F)
    if not any(exps):
        if absorb == 'plus':
            C = _constant_part(gm)
            gm, gp = gm * C.inverse(), C * gp
        else:
            C = _constant_part(gp)
            gm, gp = gm * C, C.inverse() * gp
    if gm * D * gp != g:
        raise ConstructionFailure('factors do not multiply back', stage='birkhoff')
    if not all(e.is_inv_poly() for r in gm.rows for e in r):
        raise ConstructionFailure('left factor has positive powers of t', stage='birkhoff')
    if not all(e.is_poly() for r in gp.rows for e in r):
        raise ConstructionFailure('right factor has negative powers of t', stage='birkhoff')
    return (GroupMatrix(gm.rows, F, LAURENT), D, GroupMatrix(gp.rows, F, LAURENT))


# letters -------------------------------------------------------------------------------------
def sigma_letter(letter):
    """The letter whose matrix is the image under t -> 1/t."""
    if letter.kind == 'elem':
        return GenLetter('elem', letter.i, letter.j, coeff=letter.coeff.sigma(),
                         inverse=letter.inverse)
    if letter.kind == 'block':
        return GenLetter('block', letter.i, 0, block=letter.block, sigma=not letter.sigma,
                         inverse=letter.inverse)
    return letter


def sigma_word(word):
    return [sigma_letter(l) for l in word]


def diag_fixture(i, field):
    """Six letters evaluating to t at (i, i) and 1/t at (i+1, i+1).

    e_{i,i+1}(t) e_{i+1,i}(-1/t) e_{i,i+1}(t) is the monomial matrix with
    t and -1/t off the diagonal; e_{i,i+1}(-1) e_{i+1,i}(1) e_{i,i+1}(-1)
    undoes the rotation.
    """
    F = field
    t = LaurentPoly.monomial(F, 1, 1)
    ti = LaurentPoly.monomial(F, F.neg(1), -1)
    one = LaurentPoly.one(F)
    return [elem(i, i + 1, t), elem(i + 1, i, ti), elem(i, i + 1, t),
            elem(i, i + 1, -one), elem(i + 1, i, one), elem(i, i + 1, -one)]


def diag_word(exps, field):
    """A word for diag(t^k1, t^k2, t^k3): fixture 1 to the k1 times fixture 2 to the -k3."""
    k1, k2, k3 = exps
    if k1 + k2 + k3 != 0:
        raise InvalidArgument('diagonal exponents must sum to 0')
    word = []
    for i, power in ((1, k1), (2, -k3)):
        base = diag_fixture(i, field)
        if power < 0:
            base = [l.inv() for l in reversed(base)]
        word.extend(base * abs(power))
    return word


def laurent_generating_set(field, n=N):
    """S, its image under t -> 1/t, and the inverses, without repeated matrices."""
    F = get_field(field) if isinstance(field, int) else field
    base = generating_set(n, F)
    out, seen = [], set()
    for l in base + sigma_word(base):
        k = letter_matrix(l, n, F, LAURENT).key()
        if k not in seen:
            seen.add(k)
            out.append(l)
    return out


# the connector -------------------------------------------------------------------------------
def _push_certificate(pb, cert, prefix, transform=None):
    word = transform(cert.word) if transform else cert.word
    pos = 0
    for s in cert.stage_breakdown:
        k = s['length']
        pb.push(word[pos:pos + k], f'{prefix}:{s["stage"]}')
        pos += k
    if pos != len(word):
        pb.push(word[pos:], prefix)


def external_connect_s(g1, g2=None, eps=EPS, strict=False):
    """Certificate, in the product proxy, from g1 to g2 in SL_3(F_q[t, 1/t]).

    Accepts a TwoPlaceProblem or the two endpoints.
    """
    prob = g1 if isinstance(g1, TwoPlaceProblem) else TwoPlaceProblem(g1, g2)
    g1, g2 = prob.g1, prob.g2
    F = g1.field
    pb = PathBuilder(g1, 'product')
    if g1 == g2:
        return pb.certificate({'length_ratio': Fraction(0)})
    delta = g1.inverse() * g2
    # delta = p * D * m with p over F_q[t] and m over F_q[1/t]
    a_minus, D0, a_plus = birkhoff_factor(delta.sigma(), absorb='minus')
    p = a_minus.sigma()
    dexps = [-e for e in diagonal_exponents(D0)]
    m_sig = a_plus
    _, _, f1 = birkhoff_factor(g1)
    c1 = external_connect(f1.to_poly(), (f1 * p).to_poly(), eps, strict)
    _push_certificate(pb, c1, 'plus')
    if any(dexps):
        pb.push(diag_word(dexps, F), 'diag')
    cur = pb.current()
    _, _, f2 = birkhoff_factor(cur.sigma())
    c2 = external_connect(f2.to_poly(), (f2 * m_sig).to_poly(), eps, strict)
    _push_certificate(pb, c2, 'minus', sigma_word)
    if pb.current() != g2:
        raise ConstructionFailure('two-place word missed its endpoint', stage='concat')
    dist = product_proxy(delta)
    consts = {
        'length_ratio': Fraction(len(pb.word), dist),
        'avoidance_ratio': Fraction(pb.low, min(product_proxy(g1), product_proxy(g2))),
        'diag_spread': max(dexps) - min(dexps),
        'plus_length': c1.length,
        'minus_length': c2.length,
        'cone_misses': c1.constants.get('cone_misses', 0) + c2.constants.get('cone_misses', 0),
    }
    return pb.certificate(consts)


# sampling ------------------------------------------------------------------------------------
def random_laurent_element(field, target, rng, n=N, max_steps=None):
    """A random walk on the Laurent generating set stopped when the product proxy equals target.

    Each letter moves the product proxy by at most one, so every target is hit.
    """
    F = get_field(field) if isinstance(field, int) else field
    if target < 1:
        raise InvalidArgument('target proxy must be >= 1')
    letters = laurent_generating_set(F, n)
    limit = max_steps or 400 * target + 400
    ident = GroupMatrix.identity(n, F, LAURENT)
    while True:
        cols = ident.columns()
        for _ in range(limit):
            g = ident.with_columns(cols)
            if product_proxy(g) == target:
                return g
            apply_to_columns(cols, letters[rng.randrange(len(letters))], F, LAURENT)


def random_laurent_elementary(field, count, rng, span=2, n=N):
    """A product of ``count`` elementary matrices e_ij(a t^k) with |k| <= span."""
    F = get_field(field) if isinstance(field, int) else field
    cols = GroupMatrix.identity(n, F, LAURENT).columns()
    for _ in range(count):
        i = rng.randrange(n)
        j = rng.choice([x for x in range(n) if x != i])
        a = F.units[rng.randrange(len(F.units))]
        k = rng.randint(-span, span)
        apply_to_columns(cols, elem(i + 1, j + 1, LaurentPoly.monomial(F, a, k)), F, LAURENT)
    return GroupMatrix.identity(n, F, LAURENT).with_columns(cols)

"""Exact word metric and exact divergence on a finite Cayley ball.

``cayley_ball_bfs`` enumerates every element within a radius of the
identity for the symmetrized generating set, together with the full
adjacency table of the ball.  Over F_2 matrices are encoded as tuples of
bitmask ints and multiplied with carry-less products; other fields go
through :class:`GroupMatrix`.

Balls in the divergence oracle are open: avoiding the ball of radius r
around c means avoiding every x with d(c, x) < r, so r <= 0 avoids nothing.
"""

import csv
import math
import os
import random
from array import array
from fractions import Fraction

import numpy as np

from ..algebra import BinPoly, get_field
from ..errors import InvalidArgument, OutOfRange, ResourceExhausted
from ..algebra.poly import clmul
from .letters import generating_set, letter_matrix
from .matrix import POLY, GroupMatrix

UNDETERMINED = math.inf

DEFAULT_BUDGET = 2 * 1024 ** 3
BUDGET_ENV = 'FQDIV_MEMORY_BUDGET'

# rough bytes per stored vertex (key tuple, dict slot, list slot), excluding adjacency
_NODE_BYTES = 320


def memory_budget(budget=None):
    """Budget in bytes: explicit value, else the environment override, else 2 GiB."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


class _BinArith:
    """Right multiplication on F_2 matrices stored as row-major bitmask tuples."""

    def __init__(self, n, field):
        self.n = n
        self.field = field

    def key(self, g):
        return g.key()

    def matrix(self, key):
        n, F = self.n, self.field
        return GroupMatrix([[BinPoly.from_bits(F, key[i * n + j]) for j in range(n)]
                            for i in range(n)], F, POLY, check=False)

    def compile(self, letter):
        k = letter_matrix(letter, self.n, self.field).key()
        n = self.n
        return [(r, c, k[r * n + c]) for r in range(n) for c in range(n) if k[r * n + c]]

    def mul(self, key, op):
        n = self.n
        out = [0] * (n * n)
        for r in range(n):
            base = r * n
            for k, j, m in op:
                x = key[base + k]
                if x:
                    out[base + j] ^= x if m == 1 else clmul(x, m)
        return tuple(out)

    def mul_keys(self, a, b):
        n = self.n
        op = [(r, c, b[r * n + c]) for r in range(n) for c in range(n) if b[r * n + c]]
        return self.mul(a, op)

    def inverse(self, key):
        return self.key(self.matrix(key).inverse())

    def rho(self, key):
        return max(e.bit_length() for e in key)


class _GenericArith:
    """The same interface over GroupMatrix for any field."""

    def __init__(self, n, field):
        self.n = n
        self.field = field
        self._cache = {}

    def key(self, g):
        k = g.key()
        self._cache[k] = g
        return k

    def matrix(self, key):
        return self._cache[key]

    def compile(self, letter):
        return letter_matrix(letter, self.n, self.field)

    def mul(self, key, op):
        return self.key(self._cache[key] * op)

    def mul_keys(self, a, b):
        return self.key(self._cache[a] * self._cache[b])

    def inverse(self, key):
        return self.key(self._cache[key].inverse())

    def rho(self, key):
        return 1 + max(e.deg for e in key_entries(self._cache[key]))


def key_entries(g):
    return [e for r in g.rows for e in r]


class CayleyBall:
    """All elements within ``radius`` of the identity, with distances and adjacency.

    ``keys[i]`` is the canonical key of vertex i, ``dist[i]`` its exact word
    distance from the identity and ``adj[i, s]`` the index of
    ``keys[i] * letters[s]`` (or -1 when that product leaves the ball).
    """

    def __init__(self, n, field, radius, letters, arith, keys, dist, adj):
        self.n = n
        self.field = field
        self.radius = radius
        self.letters = letters
        self._arith = arith
        self.keys = keys
        self.index = {k: i for i, k in enumerate(keys)}
        self.dist = dist
        self.adj = adj

    def __len__(self):
        return len(self.keys)

    def _key(self, g):
        return self._arith.key(g) if isinstance(g, GroupMatrix) else g

    def lookup(self, g):
        """Vertex index of g, or None when g lies outside the ball."""
        return self.index.get(self._key(g))

    def __contains__(self, g):
        return self.lookup(g) is not None

    def distance_from_identity(self, g):
        i = self.lookup(g)
        if i is None:
            raise OutOfRange(f'element outside the radius-{self.radius} ball')
        return int(self.dist[i])

    def distance(self, a, b):
        """Exact d_S(a, b) = |a^-1 b|; OutOfRange when a^-1 b is not in the ball."""
        ar = self._arith
        return self.distance_from_identity(ar.mul_keys(ar.inverse(self._key(a)), self._key(b)))

    def distance_lower_bound(self, a, b):
        """Exact distance when known, else radius + 1 (a certified lower bound)."""
        try:
            return self.distance(a, b)
        except OutOfRange:
            return self.radius + 1

    def matrix(self, i):
        return self._arith.matrix(self.keys[i])

    def rho(self, i):
        return self._arith.rho(self.keys[i])

    def sphere_counts(self):
        """[(r, number of elements at distance r)] for r = 0 .. radius."""
        counts = np.bincount(self.dist, minlength=self.radius + 1)
        return [(r, int(c)) for r, c in enumerate(counts)]

    def translate(self, c, idxs):
        """Indices of c * keys[i] that lie in the ball (others dropped)."""
        ar = self._arith
        ck = self._key(c)
        out = []
        for i in idxs:
            j = self.index.get(ar.mul_keys(ck, self.keys[int(i)]))
            if j is not None:
                out.append(j)
        return out


def cayley_ball_bfs(radius, n=3, field=2, budget=None, letters=None):
    """Breadth-first enumeration of the radius-``radius`` ball in the Cayley graph.

    Uses the symmetrized generating set S u S^-1 (duplicate matrices
    removed).  Raises ResourceExhausted, carrying the last completed
    radius, when the estimated memory exceeds ``budget`` bytes.
    """
    if radius < 0:
        raise InvalidArgument('radius must be >= 0')
    F = get_field(field) if isinstance(field, int) else field
    if letters is None:
        letters = generating_set(n, F)
    budget = memory_budget(budget)
    per_node = _NODE_BYTES + 4 * len(letters) + 1
    arith = _BinArith(n, F) if F.q == 2 else _GenericArith(n, F)
    ops = [arith.compile(l) for l in letters]
    ident = arith.key(GroupMatrix.identity(n, F))
    keys = [ident]
    index = {ident: 0}
    dist = array('b', [0])
    adj = array('i')
    start = 0
    for r in range(radius + 1):
        end = len(keys)
        grow = r < radius
        for u in range(start, end):
            ku = keys[u]
            for op in ops:
                kv = arith.mul(ku, op)
                v = index.get(kv)
                if v is None:
                    if grow:
                        v = len(keys)
                        index[kv] = v
                        keys.append(kv)
                        dist.append(r + 1)
                    else:
                        v = -1
                adj.append(v)
            if grow and len(keys) * per_node > budget:
                raise ResourceExhausted(
                    f'ball of radius {r + 1} exceeds the memory budget of {budget} bytes',
                    radius=r)
        start = end
    dist = np.frombuffer(dist, dtype=np.int8).astype(np.int16)
    adj = np.frombuffer(adj, dtype=np.int32).reshape(len(keys), len(ops))
    return CayleyBall(n, F, radius, letters, arith, keys, dist, adj)


# ---------------------------------------------------------------------------------------------
def bfs_length(ball, a, b, blocked=None):
    """Shortest path length from vertex a to vertex b inside the ball, avoiding ``blocked``.

    ``blocked`` is a boolean mask over vertices.  Returns UNDETERMINED when
    no path exists inside the explored region.
    """
    if a == b:
        return 0
    seen = np.zeros(len(ball), dtype=bool)
    if blocked is not None:
        if blocked[a] or blocked[b]:
            return UNDETERMINED
        seen |= blocked
    seen[a] = True
    frontier = np.array([a], dtype=np.int32)
    d = 0
    adj = ball.adj
    while frontier.size:
        d += 1
        nb = adj[frontier].ravel()
        nb = nb[nb >= 0]
        nb = np.unique(nb[~seen[nb]])
        if nb.size == 0:
            break
        if (nb == b).any():
            return d
        seen[nb] = True
        frontier = nb
    return UNDETERMINED


def excluded_radius(delta, gamma0, d_c):
    """delta * d(c, {a, b}) - gamma0 as an exact Fraction."""
    return Fraction(delta) * d_c - Fraction(gamma0)


def exact_divergence(ball, a, b, c=None, delta=Fraction(1, 4), gamma0=1):
    """Length of a shortest path from a to b avoiding the open ball of radius
    delta * d(c, {a, b}) - gamma0 around c, searched inside the explored ball.

    Returns an int, or UNDETERMINED when no such path exists inside the
    region (a statement about this radius, not about the group).  Raises
    OutOfRange when a, b, c or the distances it needs are not available.
    """
    ia, ib = ball.lookup(a), ball.lookup(b)
    if ia is None or ib is None:
        raise OutOfRange('endpoints must lie in the explored ball')
    if ia == ib:
        return 0
    if c is None or (isinstance(c, GroupMatrix) and c.is_identity()):
        ic = 0
        d_c = min(int(ball.dist[ia]), int(ball.dist[ib]))
    else:
        ic = ball.lookup(c)
        if ic is None:
            raise OutOfRange('centre must lie in the explored ball')
        d_c = min(ball.distance(c, a), ball.distance(c, b))
    r = excluded_radius(delta, gamma0, d_c)
    if r <= 0:
        return bfs_length(ball, ia, ib)
    if r > ball.radius + 1:
        raise OutOfRange(f'excluded radius {r} exceeds the explored radius {ball.radius}')
    inner = np.nonzero(ball.dist < r)[0]
    blocked = np.zeros(len(ball), dtype=bool)
    if ic == 0:
        blocked[inner] = True
    else:
        blocked[ball.translate(ball.keys[ic], inner)] = True
    return bfs_length(ball, ia, ib, blocked)


def proxy_constant(ball):
    """Smallest C with rho / C <= d_S <= C * rho over the ball minus the identity."""
    d = ball.dist[1:].astype(float)
    rho = np.array([ball.rho(i) for i in range(1, len(ball))], dtype=float)
    if not d.size:
        return 1.0
    return float(max((d / rho).max(), (rho / d).max()))


def divergence_scan(ball, delta, gamma0, pairs=100, seed=0, min_through=6):
    """Sample pairs (a, b) with d(e, a) + d(e, b) >= min_through and compute divergence.

    Returns dict rows with keys pair_id, a, b, d_ab, d_ab_exact,
    excluded_radius, div_length (UNDETERMINED when not found in the ball).
    """
    rng = random.Random(seed)
    R = ball.radius
    half = max(0, min_through - R)
    cand = np.nonzero(ball.dist >= half)[0]
    rows = []
    tries = 0
    while len(rows) < pairs and tries < 100 * max(1, pairs):
        tries += 1
        ia, ib = int(rng.choice(cand)), int(rng.choice(cand))
        if int(ball.dist[ia]) + int(ball.dist[ib]) < min_through:
            continue
        try:
            d_ab = ball.distance(ball.keys[ia], ball.keys[ib])
            exact = True
        except OutOfRange:
            d_ab, exact = R + 1, False
        d_c = min(int(ball.dist[ia]), int(ball.dist[ib]))
        length = exact_divergence(ball, ball.keys[ia], ball.keys[ib], None, delta, gamma0)
        rows.append({'pair_id': len(rows), 'a': ia, 'b': ib, 'd_ab': d_ab, 'd_ab_exact': exact,
                     'excluded_radius': excluded_radius(delta, gamma0, d_c),
                     'div_length': length})
    return rows


def write_ball_csv(ball, path):
    with open(path, 'w', newline='') as fh:
        w = csv.writer(fh)
        w.writerow(['radius', 'count'])
        w.writerows(ball.sphere_counts())


def write_divergence_csv(rows, path_or_file):
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, 'w', newline='') if own else path_or_file
    try:
        w = csv.writer(fh)
        w.writerow(['pair_id', 'a', 'b', 'd_ab', 'd_ab_exact', 'excluded_radius', 'div_length'])
        for r in rows:
            length = 'inf' if r['div_length'] == UNDETERMINED else r['div_length']
            w.writerow([r['pair_id'], r['a'], r['b'], r['d_ab'], int(bool(r['d_ab_exact'])),
                        str(r['excluded_radius']), length])
    finally:
        if own:
            fh.close()

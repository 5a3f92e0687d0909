"""Finite fields F_q, q = p**k.

Elements are plain ints in ``range(q)``.  For a prime field the int is the
residue itself.  For k > 1 the int encodes the coefficient vector
(d_0, ..., d_{k-1}) of d_0 + d_1 x + ... + d_{k-1} x^{k-1} in base p, the
polynomial being reduced modulo the configured irreducible ``modulus``.

Extension fields carry full addition/multiplication tables, so every
operation is a lookup.  ``FieldElem`` wraps an int together with its field
for callers that want operator syntax; internal code works on raw ints.
"""

import functools
import itertools

from ..errors import InvalidArgument

# Monic irreducible moduli, coefficients ascending (x^2+x+1, x^3+x+1, x^2+1).
DEFAULT_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
}


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q):
    """Return (p, k) with q = p**k, or raise InvalidArgument."""
    if q < 2:
        raise InvalidArgument(f'q={q} is not a prime power')
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or not _is_prime(p):
        raise InvalidArgument(f'q={q} is not a prime power')
    return p, k


def _fp_polymulmod(a, b, mod, p):
    # a, b: coefficient lists over F_p of length k; mod monic of degree k
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return prod[:k]


def _fp_is_irreducible(mod, p):
    # brute force: no monic factor of degree 1..k//2
    k = len(mod) - 1
    if mod[-1] != 1:
        return False
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = list(tail) + [1]
            r = list(mod)
            for top in range(k, d - 1, -1):
                c = r[top]
                if c:
                    for i in range(d + 1):
                        r[top - d + i] = (r[top - d + i] - c * f[i]) % p
            if not any(r[:d]):
                return False
    return True


def find_modulus(p, k):
    """Smallest (lexicographic) monic irreducible of degree k over F_p."""
    for tail in itertools.product(range(p), repeat=k):
        mod = tuple(reversed(tail)) + (1,)
        if mod[0] and _fp_is_irreducible(mod, p):
            return mod
    raise InvalidArgument(f'no irreducible of degree {k} over F_{p}')


class GF:
    """The finite field with q = p**k elements."""

    def __init__(self, q, modulus=None):
        p, k = prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = DEFAULT_MODULI.get(q) or find_modulus(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or not _fp_is_irreducible(modulus, p):
                raise InvalidArgument(f'modulus {modulus} is not a monic irreducible of degree {k} over F_{p}')
            self.modulus = modulus
        self._build_tables()

    def _digits(self, a):
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _undigits(self, ds):
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def _build_tables(self):
        q, p = self.q, self.p
        if self.k == 1:
            self.add_t = self.mul_t = None
            self.neg_t = [(-a) % p for a in range(p)]
            self.inv_t = [0] + [pow(a, p - 2, p) for a in range(1, p)]
            return
        digs = [self._digits(a) for a in range(q)]
        self.add_t = [[self._undigits([(x + y) % p for x, y in zip(digs[a], digs[b])])
                       for b in range(q)] for a in range(q)]
        self.neg_t = [self._undigits([(-x) % p for x in digs[a]]) for a in range(q)]
        self.mul_t = [[self._undigits(_fp_polymulmod(digs[a], digs[b], self.modulus, p))
                       for b in range(q)] for a in range(q)]
        self.inv_t = [0] * q
        for a in range(1, q):
            row = self.mul_t[a]
            self.inv_t[a] = row.index(1)

    # raw int arithmetic -------------------------------------------------
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return self.add_t[a][b]

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add_t[a][self.neg_t[b]]

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        return self.mul_t[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError('inverse of zero in F_q')
        return self.inv_t[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def from_int(self, n):
        """Image of the integer n under Z -> F_q."""
        return self.embed_prime(n % self.p)

    def embed_prime(self, d):
        # element of the prime subfield: the constant digit
        return d % self.p

    @property
    def elements(self):
        return range(self.q)

    @property
    def units(self):
        return range(1, self.q)

    def elem(self, a):
        return FieldElem(self, a)

    def __eq__(self, other):
        return isinstance(other, GF) and self.q == other.q and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f'GF({self.q})'
        return f'GF({self.q}, modulus={self.modulus})'

    def __reduce__(self):
        return (get_field, (self.q, self.modulus))


@functools.lru_cache(maxsize=None)
def get_field(q, modulus=None):
    """Cached field constructor; ``modulus`` only matters for prime powers."""
    if modulus is not None:
        modulus = tuple(modulus)
    return GF(q, modulus)


class FieldElem:
    """An element of F_q with operator overloading."""

    __slots__ = ('field', 'value')

    def __init__(self, field, value):
        if not 0 <= value < field.q:
            raise InvalidArgument(f'{value} is not an element code of {field}')
        self.field = field
        self.value = value

    def _other(self, b):
        if isinstance(b, FieldElem):
            if b.field != self.field:
                raise InvalidArgument('field mismatch')
            return b.value
        if isinstance(b, int):
            return self.field.from_int(b)
        return NotImplemented

    def __add__(self, b):
        b = self._other(b)
        return NotImplemented if b is NotImplemented else FieldElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, b):
        b = self._other(b)
        return NotImplemented if b is NotImplemented else FieldElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, b):
        b = self._other(b)
        return NotImplemented if b is NotImplemented else FieldElem(self.field, self.field.sub(b, self.value))

    def __mul__(self, b):
        b = self._other(b)
        return NotImplemented if b is NotImplemented else FieldElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, b):
        b = self._other(b)
        return NotImplemented if b is NotImplemented else FieldElem(self.field, self.field.div(self.value, b))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, b):
        if isinstance(b, FieldElem):
            return self.field == b.field and self.value == b.value
        if isinstance(b, int):
            return self.value == self.field.from_int(b)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f'FieldElem({self.value}, q={self.field.q})'

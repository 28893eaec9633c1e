"""Finite fields GF(p^s) and Reed-Solomon evaluation encoding.

Elements are integers in ``[0, q)``.  For extension fields an element's
base-``p`` digits are its polynomial coefficients, lowest degree first,
so ``2`` is ``x`` and ``3`` is ``x + 1`` in GF(4).  Prime fields use plain
modular arithmetic; extension fields use exp/log tables over a primitive
element.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 1 << 16


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, s)`` with ``q == p**s`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, s),) = f.items()
    return p, s


def prime_powers(limit: int = MAX_ORDER):
    """Prime powers ``2 <= q <= limit`` in increasing order."""
    for q in range(2, limit + 1):
        if prime_power(q) is not None:
            yield q


# -- polynomials over GF(p), coefficient lists lowest degree first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        shift = len(a) - 1 - df
        c = (a[-1] * inv_lead) % p
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _digits(v: int, p: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _undigits(d, p: int) -> int:
    v = 0
    for c in reversed(d):
        v = v * p + int(c)
    return v


def is_irreducible(f: list[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= deg/2."""
    f = _trim(list(f))
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            g = _digits(low, p, d) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, s: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree ``s``."""
    if s == 1:
        return (0, 1)
    for low in range(p**s):
        f = _digits(low, p, s) + [1]
        if f[0] != 0 and is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {s} over GF({p})")


class GaloisField:
    """GF(p^s) with vectorized arithmetic on integer element codes."""

    def __init__(self, order: int, modulus=None):
        pp = prime_power(order)
        if pp is None:
            raise ValueError(f"field order must be a prime power, got {order}")
        if order > MAX_ORDER:
            raise ValueError(f"field order {order} exceeds supported maximum {MAX_ORDER}")
        self.p, self.s = pp
        self.order = order
        if modulus is None:
            modulus = default_modulus(self.p, self.s)
        modulus = tuple(int(c) % self.p for c in modulus)
        if len(_trim(list(modulus))) != self.s + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.s}")
        if self.s > 1 and not is_irreducible(list(modulus), self.p):
            raise ValueError(f"modulus {modulus} is reducible over GF({self.p})")
        self.modulus = modulus
        if self.s > 1:
            self._build_tables()

    def __repr__(self):
        coeffs = ",".join(str(c) for c in reversed(self.modulus))
        return f"GF({self.p}^{self.s})/{coeffs}"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (self.order, self.modulus) == (
            other.order,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.order, self.modulus))

    @property
    def elements(self) -> np.ndarray:
        """All elements in canonical order."""
        return np.arange(self.order, dtype=np.int64)

    def _mulmod_scalar(self, a: int, b: int) -> int:
        p, s = self.p, self.s
        da, db = _digits(a, p, s), _digits(b, p, s)
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return _undigits(_poly_mod(prod, list(self.modulus), p), p)

    def _build_tables(self):
        q, p, s = self.order, self.p, self.s
        digits = np.zeros((q, s), dtype=np.int64)
        v = np.arange(q, dtype=np.int64)
        for i in range(s):
            v, digits[:, i] = np.divmod(v, p)
        self._digits = digits
        self._weights = p ** np.arange(s, dtype=np.int64)

        group = q - 1
        cofactors = [group // r for r in factorize(group)]
        for g in range(2, q):
            if all(self._pow_scalar(g, c) != 1 for c in cofactors):
                break
        else:  # pragma: no cover - every finite field has a generator
            raise AssertionError("no primitive element found")
        self.generator = g
        exp = np.zeros(2 * group, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(group):
            exp[i] = x
            log[x] = i
            x = self._mulmod_scalar(x, g)
        exp[group:] = exp[:group]
        self._exp, self._log = exp, log

    def _pow_scalar(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mulmod_scalar(result, base)
            base = self._mulmod_scalar(base, base)
            e >>= 1
        return result

    def _check(self, a):
        arr = np.asarray(a, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.order):
            raise ValueError(f"element out of range for {self!r}")
        return arr

    @staticmethod
    def _out(arr):
        return int(arr) if np.ndim(arr) == 0 else arr

    def add(self, a, b):
        a, b = self._check(a), self._check(b)
        if self.s == 1:
            return self._out((a + b) % self.p)
        if self.p == 2:
            return self._out(a ^ b)
        summed = (self._digits[a] + self._digits[b]) % self.p
        return self._out(summed @ self._weights)

    def neg(self, a):
        a = self._check(a)
        if self.s == 1:
            return self._out((-a) % self.p)
        if self.p == 2:
            return self._out(a)
        return self._out(((-self._digits[a]) % self.p) @ self._weights)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = self._check(a), self._check(b)
        if self.s == 1:
            return self._out((a * b) % self.p)
        res = self._exp[self._log[a] + self._log[b]]
        return self._out(np.where((a == 0) | (b == 0), 0, res))

    def inv(self, a):
        a = self._check(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.s == 1:
            return self._out(np.vectorize(lambda v: pow(int(v), self.p - 2, self.p))(a))
        return self._out(self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))


@functools.lru_cache(maxsize=64)
def field(order: int) -> GaloisField:
    """Cached field with the default modulus."""
    return GaloisField(order)


@dataclass(frozen=True)
class RSCode:
    """Reed-Solomon code evaluating at every field element in canonical order."""

    field: GaloisField
    dimension: int

    def __post_init__(self):
        if not 1 <= self.dimension <= self.field.order:
            raise ValueError(
                f"dimension must be in [1, {self.field.order}], got {self.dimension}"
            )

    @property
    def length(self) -> int:
        return self.field.order

    @property
    def n_messages(self) -> int:
        return self.field.order**self.dimension


def rs_encode(code: RSCode, message) -> np.ndarray:
    """Evaluate ``sum_j message[j] * t**j`` at every field element ``t``.

    ``message`` may be a single length-``k'`` vector or a ``(N, k')`` batch;
    the result has shape ``(q,)`` or ``(N, q)``.
    """
    msg = np.asarray(message, dtype=np.int64)
    if msg.shape[-1:] != (code.dimension,):
        raise ValueError(
            f"message length must be {code.dimension}, got shape {msg.shape}"
        )
    gf = code.field
    points = gf.elements
    acc = np.zeros(msg.shape[:-1] + (code.length,), dtype=np.int64)
    for j in range(code.dimension - 1, -1, -1):
        coef = np.broadcast_to(msg[..., j : j + 1], acc.shape)
        acc = np.asarray(gf.add(gf.mul(acc, np.broadcast_to(points, acc.shape)), coef))
    return acc


def enumerate_messages(code: RSCode, count: int) -> np.ndarray:
    """First ``count`` messages in lexicographic order (last symbol varies fastest)."""
    if count < 0 or count > code.n_messages:
        raise ValueError(
            f"cannot take {count} messages from a code with {code.n_messages}"
        )
    q, k = code.field.order, code.dimension
    out = np.zeros((count, k), dtype=np.int64)
    idx = np.arange(count, dtype=np.int64)
    for pos in range(k - 1, -1, -1):
        idx, out[:, pos] = np.divmod(idx, q)
    return out

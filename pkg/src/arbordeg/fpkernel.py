"""Low-level dense polynomial arithmetic over a prime field.

Polynomials are numpy int64 arrays of reduced residues, ascending degree,
with no trailing zeros (the zero polynomial is the empty array).  These
kernels are what makes degree-4096 factorization work at desk scale:

* multiplication by Kronecker substitution (pack coefficients into a big
  integer, one gmpy2 multiply, unpack) -- exact for any prime p;
* reduction modulo a fixed monic modulus via a precomputed Newton inverse
  of the reversed modulus (two multiplies per reduction);
* remainder/gcd loops that update numpy slices instead of Python lists;
* Brent-Kung modular composition, used to move Frobenius powers x^(q^k)
  in O(log k) compositions instead of k powerings.

Everything here is internal plumbing for poly/ff_factor; the public
types live there.
"""

from __future__ import annotations

import math

import gmpy2
import numpy as np

_ZERO = np.zeros(0, dtype=np.int64)


def trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if len(nz) else _ZERO


def from_list(coeffs, p: int) -> np.ndarray:
    return trim(np.asarray([c % p for c in coeffs], dtype=np.int64))


def deg(a: np.ndarray) -> int:
    """Degree with deg(0) = -1."""
    return len(a) - 1


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] += b
    out %= p
    return trim(out)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    out %= p
    return trim(out)


def scale(a, s, p):
    s %= p
    if s == 0:
        return _ZERO
    return a * s % p


def mul(a, b, p):
    """Product via Kronecker substitution; exact for any prime p."""
    if len(a) == 0 or len(b) == 0:
        return _ZERO
    if len(a) == 1:
        return scale(b, int(a[0]), p)
    if len(b) == 1:
        return scale(a, int(b[0]), p)
    m = len(a) + len(b) - 1
    bound = min(len(a), len(b)) * (p - 1) * (p - 1)
    if bound < 1 << 32:
        A = gmpy2.mpz.from_bytes(a.astype("<u4").tobytes(), "little")
        B = gmpy2.mpz.from_bytes(b.astype("<u4").tobytes(), "little")
        raw = (A * B).to_bytes(m * 4 + 4, "little")
        out = np.frombuffer(raw[: m * 4], dtype="<u4").astype(np.int64)
    elif bound < 1 << 63:
        A = gmpy2.mpz.from_bytes(a.astype("<u8").tobytes(), "little")
        B = gmpy2.mpz.from_bytes(b.astype("<u8").tobytes(), "little")
        raw = (A * B).to_bytes(m * 8 + 8, "little")
        out = np.frombuffer(raw[: m * 8], dtype="<u8").astype(np.int64)
    else:
        # huge p: pack into object ints (rare; desk-scale p is word-sized)
        out = np.convolve(a.astype(object), b.astype(object))
        return trim(np.asarray([int(v) % p for v in out], dtype=object).astype(np.int64))
    return trim(out % p)


def _inv_mod_p(x: int, p: int) -> int:
    return pow(x % p, p - 2, p)


def divmod_poly(a, b, p):
    """Schoolbook division with numpy slice updates; b need not be monic."""
    a = trim(np.asarray(a) % p)
    b = trim(np.asarray(b) % p)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return _ZERO, a
    binv = _inv_mod_p(int(b[-1]), p)
    r = a.copy()
    q = np.zeros(len(a) - db, dtype=np.int64)
    body = b[:db]
    # lazy reduction: partial remainders stay within int64 while
    # steps * (p-1)^2 < 2^62; reduce when the budget runs out
    budget = (1 << 62) // ((p - 1) * (p - 1) + 1)
    steps = 0
    for i in range(len(a) - 1, db - 1, -1):
        qi = int(r[i]) % p * binv % p
        q[i - db] = qi
        if qi:
            if db:
                r[i - db : i] -= qi * body
            r[i] = 0
            steps += 1
            if steps >= budget:
                r %= p
                steps = 0
    return trim(q), trim(r[:db] % p)


def rem(a, b, p):
    return divmod_poly(a, b, p)[1]


def div_exact(a, b, p):
    q, r = divmod_poly(a, b, p)
    if len(r):
        raise ArithmeticError("division was not exact")
    return q


def monic(a, p):
    if len(a) == 0 or a[-1] == 1:
        return a
    return scale(a, _inv_mod_p(int(a[-1]), p), p)


def gcd(a, b, p):
    """Monic gcd by the Euclidean remainder sequence."""
    a = trim(np.asarray(a) % p)
    b = trim(np.asarray(b) % p)
    while len(b):
        a, b = b, rem(a, b, p)
    return monic(a, p)


def eval_at(a, x, p):
    """Horner evaluation at a scalar."""
    acc = 0
    for c in a[::-1]:
        acc = (acc * x + int(c)) % p
    return acc


def derivative(a, p):
    if len(a) <= 1:
        return _ZERO
    return trim(np.arange(1, len(a), dtype=np.int64) * a[1:] % p)


class ModCtx:
    """Fixed monic modulus with precomputed Newton inverse for fast rem."""

    # below this modulus degree, plain schoolbook reduction wins
    _NEWTON_MIN_DEG = 48

    def __init__(self, g, p: int):
        g = trim(np.asarray(g, dtype=np.int64) % p)
        if len(g) == 0:
            raise ZeroDivisionError("zero modulus")
        if g[-1] != 1:
            g = monic(g, p)
        self.g = g
        self.p = p
        self.n = len(g) - 1
        self._rev = g[::-1].copy()
        self._inv = None
        self._inv_prec = 0

    def _newton_inverse(self, prec: int):
        """Inverse of rev(g) modulo x^prec."""
        p = self.p
        inv = np.array([1], dtype=np.int64)  # rev(g) has constant term 1
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            t = mul(self._rev[:k], inv, p)[:k]
            t = (-t) % p
            if len(t) == 0:
                t = np.zeros(1, dtype=np.int64)
            t[0] = (t[0] + 2) % p
            inv = trim(mul(inv, trim(t), p)[:k])
        return inv

    def rem(self, a):
        a = trim(np.asarray(a) % self.p)
        n = self.n
        if len(a) - 1 < n:
            return a
        if n == 0:
            return _ZERO
        if n < self._NEWTON_MIN_DEG:
            return rem(a, self.g, self.p)
        m = len(a) - 1 - n  # quotient degree
        if self._inv is None or self._inv_prec < m + 1:
            self._inv_prec = max(n, m + 1)
            self._inv = self._newton_inverse(self._inv_prec)
        ra = a[::-1]
        qr = mul(ra[: m + 1], self._inv[: m + 1], self.p)
        # pad to exactly m+1 slots before reversing: the reversal is
        # position-sensitive and mul() trims trailing zeros
        if len(qr) < m + 1:
            qr = np.concatenate([qr, np.zeros(m + 1 - len(qr), dtype=np.int64)])
        q = trim(qr[: m + 1][::-1])
        r = a[: n].copy()
        if len(q):
            gq = mul(self.g, q, self.p)
            r = (r - gq[:n]) % self.p
        return trim(r)

    def mulmod(self, a, b):
        return self.rem(mul(a, b, self.p))

    def powmod(self, a, e: int):
        r = np.array([1], dtype=np.int64)
        a = self.rem(np.asarray(a, dtype=np.int64))
        while e:
            if e & 1:
                r = self.mulmod(r, a)
            e >>= 1
            if e:
                a = self.mulmod(a, a)
        return r

    def compose(self, a, b):
        """Brent-Kung modular composition a(b) mod g."""
        p, n = self.p, self.n
        a = trim(np.asarray(a) % p)
        if len(a) <= 1 or n == 0:
            return a[:1].copy() if len(a) else _ZERO
        b = self.rem(np.asarray(b, dtype=np.int64))
        m = math.isqrt(len(a) - 1) + 1
        pows = [np.array([1], dtype=np.int64)]
        if m > 1:
            pows.append(b)
        for _ in range(2, m):
            pows.append(self.mulmod(pows[-1], b))
        bm = self.mulmod(pows[-1], b) if m > 1 else b
        mat = np.zeros((m, n), dtype=np.int64)
        for i, q in enumerate(pows):
            mat[i, : len(q)] = q
        nblocks = -(-len(a) // m)
        coef = np.zeros((nblocks, m), dtype=np.int64)
        for j in range(nblocks):
            chunk = a[j * m : (j + 1) * m]
            coef[j, : len(chunk)] = chunk
        rows = coef @ mat % p
        res = trim(rows[nblocks - 1])
        for j in range(nblocks - 2, -1, -1):
            res = add(self.mulmod(res, bm), trim(rows[j]), p)
        return res

    def frobenius(self, q: int):
        """x^q mod g."""
        return self.powmod(np.array([0, 1], dtype=np.int64), q)

    def frobenius_power(self, q: int, k: int, xq=None):
        """x^(q^k) mod g by composition doubling on the exponent k."""
        if k == 0:
            return self.rem(np.array([0, 1], dtype=np.int64))
        base = self.frobenius(q) if xq is None else xq
        result = None
        while k:
            if k & 1:
                result = base if result is None else self.compose(result, base)
            k >>= 1
            if k:
                base = self.compose(base, base)
        return result


def minus_x(a, p):
    """a - x, for gcds against Frobenius fixed points."""
    n = max(len(a), 2)
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[1] -= 1
    out %= p
    return trim(out)

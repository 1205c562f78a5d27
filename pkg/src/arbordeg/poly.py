"""Dense univariate polynomials over Q and over prime fields.

PolyQ holds exact Fraction coefficients; PolyFp wraps the numpy kernel
arrays from `fpkernel`.  Both are immutable, lowest degree first, with
no stored trailing zeros.

Resultants over Q run through two routes: a subresultant polynomial
remainder sequence over Z (exact, controls coefficient growth, used at
moderate size) and a CRT-modular route (word-size primes, Hadamard
bound, optional early termination) for the large iterate discriminants.
The two routes agree on their overlap and the tests pin that down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fpkernel as fpk
from .errors import BadReductionError
from .exact_arith import is_prime


def _as_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


class PolyQ:
    """Polynomial with rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("PolyQ is immutable")

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyQ({list(self.coeffs)!r})"

    def __add__(self, other):
        other = _coerce_q(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __sub__(self, other):
        return self + (-_coerce_q(other))

    def __neg__(self):
        return PolyQ([-c for c in self.coeffs])

    def __mul__(self, other):
        other = _coerce_q(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ([])
        if all(c.denominator == 1 for c in a) and all(c.denominator == 1 for c in b):
            out = _mul_int([c.numerator for c in a], [c.numerator for c in b])
            return PolyQ(out)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyQ(out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _coerce_q(other) - self

    def __call__(self, x):
        acc = Fraction(0)
        x = _as_fraction(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_strings(self) -> list[str]:
        """Coefficient list as exact `p/q` strings, ascending degree."""
        return [
            str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            for c in self.coeffs
        ]


def _coerce_q(x) -> PolyQ:
    if isinstance(x, PolyQ):
        return x
    return PolyQ([x])


def _mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


X_Q = PolyQ([0, 1])


def poly_x(d: int = 1, c=0) -> PolyQ:
    """The unicritical polynomial x^d - c (d = 1, c = 0 gives x)."""
    coeffs = [Fraction(-_as_fraction(c))] + [Fraction(0)] * (d - 1) + [Fraction(1)]
    return PolyQ(coeffs)


class PolyFp:
    """Polynomial over F_p, reduced residues ascending degree."""

    __slots__ = ("p", "a")

    def __init__(self, coeffs, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == np.int64:
            arr = fpk.trim(coeffs % p)
        else:
            arr = fpk.from_list(list(coeffs), p)
        arr.setflags(write=False)
        object.__setattr__(self, "a", arr)

    def __setattr__(self, *a):
        raise AttributeError("PolyFp is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.a)

    @property
    def degree(self) -> int:
        return len(self.a) - 1

    def is_zero(self) -> bool:
        return len(self.a) == 0

    def is_monic(self) -> bool:
        return len(self.a) > 0 and self.a[-1] == 1

    def monic(self) -> "PolyFp":
        return PolyFp(fpk.monic(self.a, self.p), self.p)

    def _check(self, other: "PolyFp"):
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    def __eq__(self, other):
        return (
            isinstance(other, PolyFp)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and bool((self.a == other.a).all())
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"PolyFp({list(self.coeffs)!r}, p={self.p})"

    def __add__(self, other):
        other = self._coerce(other)
        return PolyFp(fpk.add(self.a, other.a, self.p), self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        return PolyFp(fpk.sub(self.a, other.a, self.p), self.p)

    def __neg__(self):
        return PolyFp((-self.a) % self.p, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        return PolyFp(fpk.mul(self.a, other.a, self.p), self.p)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, x) -> "PolyFp":
        if isinstance(x, PolyFp):
            self._check(x)
            return x
        return PolyFp([int(x)], self.p)

    def __divmod__(self, other):
        other = self._coerce(other)
        q, r = fpk.divmod_poly(self.a, other.a, self.p)
        return PolyFp(q, self.p), PolyFp(r, self.p)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x: int) -> int:
        return fpk.eval_at(self.a, int(x) % self.p, self.p)

    def gcd(self, other: "PolyFp") -> "PolyFp":
        other = self._coerce(other)
        return PolyFp(fpk.gcd(self.a, other.a, self.p), self.p)


def poly_x_fp(p: int, d: int = 1, c: int = 0) -> PolyFp:
    return PolyFp([(-c) % p] + [0] * (d - 1) + [1], p)


# ---------------------------------------------------------------------------
# generic operations (PolyQ | PolyFp)
# ---------------------------------------------------------------------------


def compose(g, h):
    """g(h(x)) in the common ring, by Horner on g's coefficients."""
    if isinstance(g, PolyQ) and isinstance(h, PolyQ):
        acc = PolyQ([])
        for c in reversed(g.coeffs):
            acc = acc * h + PolyQ([c])
        return acc
    if isinstance(g, PolyFp) and isinstance(h, PolyFp):
        g._check(h)
        p = g.p
        acc = fpk.from_list([], p)
        for c in g.a[::-1]:
            acc = fpk.add(fpk.mul(acc, h.a, p), fpk.from_list([int(c)], p), p)
        return PolyFp(acc, p)
    raise ValueError("compose requires two polynomials over the same ring")


def iterate(f, n: int):
    """n-th iterate under composition, with f^0 = x."""
    if n < 0:
        raise ValueError("iterate needs n >= 0")
    if isinstance(f, PolyQ):
        g = X_Q
    elif isinstance(f, PolyFp):
        g = poly_x_fp(f.p)
    else:
        raise ValueError("iterate requires PolyQ or PolyFp")
    for _ in range(n):
        g = compose(f, g)
    return g


def derivative(g):
    if isinstance(g, PolyQ):
        return PolyQ([i * c for i, c in enumerate(g.coeffs)][1:])
    if isinstance(g, PolyFp):
        return PolyFp(fpk.derivative(g.a, g.p), g.p)
    raise ValueError("derivative requires PolyQ or PolyFp")


def reduce_mod_p(g: PolyQ, p: int) -> PolyFp:
    """Coefficientwise reduction; rejects coefficients with v_p < 0."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = []
    for i, c in enumerate(g.coeffs):
        if c.denominator % p == 0:
            raise BadReductionError(p, i, c)
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return PolyFp(out, p)


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------


def _to_primitive_int(g: PolyQ) -> tuple[list[int], Fraction]:
    """Write g = scale * G with G primitive integer; returns (G, scale)."""
    if g.is_zero():
        return [], Fraction(1)
    den = math.lcm(*[c.denominator for c in g.coeffs])
    ints = [c.numerator * (den // c.denominator) for c in g.coeffs]
    cont = math.gcd(*[abs(v) for v in ints])
    if ints[-1] < 0:
        cont = -cont
    return [v // cont for v in ints], Fraction(cont, den)


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    a = a[:]
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    for i in range(da, db - 1, -1):
        ci = a[i]
        a = [v * lb for v in a]
        if ci:
            for j in range(db + 1):
                a[i - db + j] -= ci * b[j]
    while a and a[-1] == 0:
        a.pop()
    return a


def _resultant_z_prs(A: list[int], B: list[int]) -> int:
    """Resultant over Z by the subresultant PRS (keeps coefficient growth linear)."""
    if not A or not B:
        return 0
    s = 1
    if len(A) < len(B):
        if ((len(A) - 1) * (len(B) - 1)) % 2:
            s = -s
        A, B = B, A
    g = h = 1
    while len(B) - 1 > 0:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if (dA % 2) and (dB % 2):
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        A = B
        denom = g * h**delta
        B = [v // denom for v in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta // h ** (delta - 1)
    dA = len(A) - 1
    if dA == 1:
        return s * B[0]
    return s * B[0] ** dA // h ** (dA - 1)


def _resultant_fp(a: np.ndarray, b: np.ndarray, p: int) -> int:
    """Resultant over F_p by the Euclidean remainder sequence."""
    a = fpk.trim(a % p)
    b = fpk.trim(b % p)
    if len(a) == 0 or len(b) == 0:
        return 0
    res = 1
    while len(b) - 1 > 0:
        r = fpk.rem(a, b, p)
        da, db, dr = len(a) - 1, len(b) - 1, len(r) - 1
        if (da * db) % 2:
            res = -res % p
        res = res * pow(int(b[-1]), da - (dr if dr >= 0 else 0), p) % p
        if dr < 0:
            return 0
        a, b = b, r
    return res * pow(int(b[0]), len(a) - 1, p) % p


def _log2_norm2(v: list[int]) -> float:
    m = max(abs(x) for x in v)
    if m == 0:
        return 0.0
    return math.log2(m) + 0.5 * math.log2(len(v))


_CRT_PRIME_BITS = 25
_CRT_STABLE_WINDOW = 16


def _crt_primes():
    q = (1 << _CRT_PRIME_BITS) + 1
    while True:
        if is_prime(q):
            yield q
        q += 2


def _resultant_z_crt(A: list[int], B: list[int], *, early_term: bool = True) -> int:
    """Resultant over Z by CRT over word primes, capped by the Hadamard bound.

    With early_term, stops once the balanced reconstruction is stable for
    _CRT_STABLE_WINDOW extra primes; otherwise runs to the full bound.
    """
    dA, dB = len(A) - 1, len(B) - 1
    # |Res| <= ||A||_2^dB * ||B||_2^dA
    log2_bound = dB * _log2_norm2(A) + dA * _log2_norm2(B) + 2
    residue, modulus = 0, 1
    stable = 0
    value = None
    for p in _crt_primes():
        if A[-1] % p == 0 or B[-1] % p == 0:
            continue
        a = np.array([v % p for v in A], dtype=np.int64)
        b = np.array([v % p for v in B], dtype=np.int64)
        rp = _resultant_fp(a, b, p)
        # CRT combine
        inv = pow(modulus % p, -1, p)
        t = (rp - residue) % p * inv % p
        residue += modulus * t
        modulus *= p
        balanced = residue if residue <= modulus // 2 else residue - modulus
        if balanced == value:
            stable += 1
        else:
            stable = 0
            value = balanced
        if early_term and stable >= _CRT_STABLE_WINDOW:
            return balanced
        if math.log2(modulus) > log2_bound:
            return balanced
    raise AssertionError("unreachable")


_PRS_MAX_DEGREE = 64


def resultant(g: PolyQ, h: PolyQ, *, early_term: bool = True) -> Fraction:
    """Resultant with the standard sign convention.

    Subresultant PRS at moderate degree; CRT-modular above (the two are
    cross-checked in the test suite).  Scales out rational contents first:
    Res(s*G, t*H) = s^deg(h) * t^deg(g) * Res(G, H).
    """
    if g.is_zero() and h.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if g.is_zero() or h.is_zero():
        return Fraction(0)
    if g.degree == 0:
        return g.coeffs[0] ** h.degree
    if h.degree == 0:
        return h.coeffs[0] ** g.degree
    G, sg = _to_primitive_int(g)
    H, sh = _to_primitive_int(h)
    if max(g.degree, h.degree) <= _PRS_MAX_DEGREE:
        r = _resultant_z_prs(G, H)
    else:
        r = _resultant_z_crt(G, H, early_term=early_term)
    return sg**h.degree * sh**g.degree * r


def discriminant(g: PolyQ, *, early_term: bool = True) -> Fraction:
    """(-1)^(n(n-1)/2) * Res(g, g') / lc(g)."""
    n = g.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(g, derivative(g), early_term=early_term)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / g.leading()


_SEPARABILITY_PRIMES = 12


def is_separable(g) -> bool:
    """True iff gcd(g, g') is constant.

    Over F_p this is a single gcd.  Over Q: a witness prime with constant
    modular gcd certifies separability; failing that, the call falls back
    to the exact zero test on Res(g, g') (full CRT bound, no early stop).
    """
    if isinstance(g, PolyFp):
        if g.degree < 1:
            raise ValueError("separability needs degree >= 1")
        return g.gcd(derivative(g)).degree == 0
    if not isinstance(g, PolyQ):
        raise ValueError("is_separable requires PolyQ or PolyFp")
    if g.degree < 1:
        raise ValueError("separability needs degree >= 1")
    G, _ = _to_primitive_int(g)
    dG = [i * v for i, v in enumerate(G)][1:]
    tried = 0
    for p in _crt_primes():
        if G[-1] % p == 0:
            continue
        a = np.array([v % p for v in G], dtype=np.int64)
        b = np.array([v % p for v in dG], dtype=np.int64)
        if fpk.deg(fpk.gcd(a, b, p)) == 0:
            return True
        tried += 1
        if tried >= _SEPARABILITY_PRIMES:
            break
    gq = PolyQ(G)
    return resultant(gq, derivative(gq), early_term=False) != 0


# ---------------------------------------------------------------------------
# textual interchange format
# ---------------------------------------------------------------------------


def parse_rational(text) -> Fraction:
    """Exact rational from an `p/q` string (or a bare integer)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError(f"refusing inexact float {text!r}; pass a p/q string")
    return Fraction(str(text).strip())


def parse_poly(spec) -> PolyQ:
    """PolyQ from a coefficient list, ascending degree.

    Accepts a JSON-style string like "[-1, 0, 1]" (entries may be `p/q`
    strings) or an iterable of entries.
    """
    if isinstance(spec, str):
        body = spec.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"polynomial literal must be a [..] list, got {spec!r}")
        inner = body[1:-1].strip()
        entries = [e.strip().strip("'\"") for e in inner.split(",")] if inner else []
    else:
        entries = list(spec)
    return PolyQ([parse_rational(e) for e in entries])

"""Exact integer and rational arithmetic utilities.

Rationals are plain `fractions.Fraction` values throughout the library;
this module supplies the number-theoretic layer on top of them: p-adic
valuations, primality, integer factorization, multiplicative orders, and
the prime-power order analysis behind the d^(s - m0) lower bound on
mult_order(q, d^s).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

INFINITY = math.inf

# Deterministic Miller-Rabin witness set, exact for all n < 2^64
# (see https://miller-rabin.appspot.com/).
_MR_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_MR_ROUNDS_LARGE = 64  # 4^-64 < 2^-128 per-round error bound

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)


def _mr_witness(a: int, n: int, d: int, r: int) -> bool:
    """True if a witnesses the compositeness of n, with n-1 = d * 2^r."""
    a %= n
    if a in (0, 1, n - 1):
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def primality(n: int) -> tuple[bool, str]:
    """Primality of n with certainty metadata.

    Returns (verdict, certainty) where certainty is "deterministic" for
    all n < 2^64 and "probable" above (error probability < 2^-128).
    """
    if n < 0:
        raise ValueError("primality is defined for nonnegative integers")
    if n < 2:
        return False, "deterministic"
    for p in _SMALL_PRIMES:
        if n == p:
            return True, "deterministic"
        if n % p == 0:
            return False, "deterministic"
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < 1 << 64:
        for a in _MR_BASES_64:
            if _mr_witness(a, n, d, r):
                return False, "deterministic"
        return True, "deterministic"
    rng = random.Random(n)
    for _ in range(_MR_ROUNDS_LARGE):
        if _mr_witness(rng.randrange(2, n - 1), n, d, r):
            return False, "deterministic"
    return True, "probable"


def is_prime(n: int) -> bool:
    """Primality test: exact below 2^64, probable-prime (error < 2^-128) above."""
    return primality(n)[0]


def valuation(x, p: int):
    """p-adic valuation of a rational, with v_p(0) = +infinity."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITY
    v = 0
    num = abs(x.numerator)
    while num % p == 0:
        num //= p
        v += 1
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class Factorization:
    """Factorization of |n| into prime powers, possibly partial.

    `factors` is sorted by prime and multiplies (with `cofactor`) to |n|.
    When the work budget runs out on a composite piece, that piece is
    left in `cofactor` and `complete` is False; this is a first-class
    result, not an error.
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    complete: bool = True

    def reconstruct(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def _pollard_rho(n: int, rng: random.Random, max_iters: int) -> int | None:
    """Brent-cycle Pollard rho; returns a nontrivial factor of n or None."""
    if n % 2 == 0:
        return 2
    for _ in range(24):
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        count = 0
        while g == 1 and count < max_iters:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
                count += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


_TRIAL_BOUND = 10000


def factor_integer(n: int, *, max_rho_iters: int = 1 << 22, seed: int = 1) -> Factorization:
    """Factor |n| into primes: trial division then Pollard rho.

    A composite piece that survives the rho budget is returned as an
    explicit cofactor with complete=False.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    m = abs(n)
    found: dict[int, int] = {}
    for p in range(2, _TRIAL_BOUND):
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    rng = random.Random(seed)
    stack = [m] if m > 1 else []
    cofactor = 1
    complete = True
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng, max_rho_iters)
        if d is None:
            cofactor *= m
            complete = False
            continue
        stack.append(d)
        stack.append(m // d)
    factors = tuple(sorted(found.items()))
    return Factorization(n=n, factors=factors, cofactor=cofactor, complete=complete)


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a byte sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(n + 1) if sieve[i]]


def _carmichael(fact: Factorization) -> int:
    """Carmichael lambda from a complete factorization."""
    lam = 1
    for p, e in fact.factors:
        if p == 2:
            block = 1 if e == 1 else (2 if e == 2 else 2 ** (e - 2))
        else:
            block = p ** (e - 1) * (p - 1)
        lam = math.lcm(lam, block)
    return lam


def mult_order(q: int, m: int) -> int:
    """Smallest k >= 1 with q^k = 1 mod m.

    Computed by stripping primes from the Carmichael exponent of m, so
    moduli far beyond iteration range are fine.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if math.gcd(q, m) != 1:
        raise ValueError(f"gcd({q}, {m}) != 1")
    fm = factor_integer(m)
    if not fm.complete:
        raise ValueError(f"could not factor modulus {m} within budget")
    lam = _carmichael(fm)
    flam = factor_integer(lam)
    if not flam.complete:
        raise ValueError(f"could not factor group exponent {lam} within budget")
    order = lam
    for p, e in flam.factors:
        for _ in range(e):
            if pow(q, order // p, m) == 1:
                order //= p
            else:
                break
    return order


@dataclass(frozen=True)
class PrimePower:
    """A certified prime raised to a positive exponent."""

    prime: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    def value(self) -> int:
        return self.prime**self.exponent


@dataclass(frozen=True)
class OrderConstant:
    """Data certifying mult_order(q, d^s) >= d^(s - m0) for all s >= 1.

    per_prime_data maps each prime l | d to (ord of q mod l, t_l), where
    t_l is the stable exponent of the order growth modulo l^s (for l = 2
    the exponent is read off q^2 - 1 instead of q - 1).
    """

    d: int
    q: int
    m0: int
    per_prime_data: tuple[tuple[int, tuple[int, int]], ...]


def order_constant(d: int, q: int) -> OrderConstant:
    """Compute m0 with mult_order(q, d^s) >= d^(s-m0) for every s >= 1.

    Per prime l | d the order of q mod l^s eventually grows by a factor
    l per step, starting after a stable exponent t_l; dividing t_l by
    the multiplicity of l in d and maximizing over l gives m0.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if math.gcd(d, q) != 1:
        raise ValueError(f"gcd({d}, {q}) != 1")
    fd = factor_integer(d)
    per_prime = []
    m0 = 0
    for l, v_l in fd.factors:
        if l == 2:
            # v2(q^(2^j) - 1) grows by exactly 1 per doubling once j >= 1;
            # ord(q mod 2^s) >= 2^(s - t) with t = v2(q^2 - 1) - 1.
            a_l = 1 if q % 2 == 1 else 0
            t_l = _int_valuation(q * q - 1, 2) - 1
        else:
            a_l = mult_order(q, l)
            t_l = _int_valuation(pow(q, a_l) - 1, l)
        m_l = -(-t_l // v_l)  # ceil
        per_prime.append((l, (a_l, t_l)))
        m0 = max(m0, m_l)
    return OrderConstant(d=d, q=q, m0=m0, per_prime_data=tuple(per_prime))


def _int_valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer, without the primality recheck."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v

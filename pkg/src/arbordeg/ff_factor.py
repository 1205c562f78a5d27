"""Factorization of polynomials over prime fields.

The pipeline is the classical one -- squarefree decomposition (with the
char-p p-th-power branch), distinct-degree factorization by Frobenius
powering, Cantor-Zassenhaus equal-degree splitting -- plus the two
derived quantities the certificates actually consume: the splitting
degree of a polynomial (lcm of its distinct irreducible factor degrees,
computed from DDF alone) and the completely-split predicate.

Randomness in EDF comes from a seeded generator with a fixed default,
so factor listings are bit-identical across runs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import fpkernel as fpk
from .poly import PolyFp

DEFAULT_SEED = 1


@dataclass(frozen=True)
class FactorizationFp:
    """unit * prod(factor^multiplicity) == input, factors monic irreducible."""

    modulus: int
    unit: int
    factors: tuple[tuple[PolyFp, int], ...]

    def reconstruct(self) -> PolyFp:
        out = PolyFp([self.unit], self.modulus)
        for f, m in self.factors:
            for _ in range(m):
                out = out * f
        return out


def _pth_root(a: np.ndarray, p: int) -> np.ndarray:
    # over the prime field Frobenius is the identity on coefficients
    return a[::p].copy()


def squarefree_decomposition(g: PolyFp) -> list[tuple[PolyFp, int]]:
    """Pairwise-coprime squarefree factors with multiplicities.

    Yun's algorithm adapted to characteristic p: multiplicities divisible
    by p are funneled into a p-th power and recursed on its p-th root.
    The product of factor^multiplicity reconstructs monic(g).
    """
    if g.degree < 1:
        raise ValueError("squarefree decomposition needs degree >= 1")
    p = g.p
    out = _sqf(fpk.monic(g.a, p), p, 1)
    out.sort(key=lambda fm: (fm[1], fm[0].degree, fm[0].coeffs))
    return out


def _sqf(a: np.ndarray, p: int, mult: int) -> list[tuple[PolyFp, int]]:
    da = fpk.derivative(a, p)
    if len(da) == 0:
        # a = h(x^p) = h^p over F_p
        return _sqf(_pth_root(a, p), p, mult * p)
    out = []
    c = fpk.gcd(a, da, p)
    w = fpk.div_exact(a, c, p)
    i = 1
    while fpk.deg(w) > 0:
        y = fpk.gcd(w, c, p)
        z = fpk.div_exact(w, y, p)
        if fpk.deg(z) > 0:
            out.append((PolyFp(z, p), i * mult))
        w = y
        c = fpk.div_exact(c, y, p)
        i += 1
    if fpk.deg(c) > 0:
        out.extend(_sqf(_pth_root(c, p), p, mult * p))
    return out


def squarefree_part(g: PolyFp) -> PolyFp:
    """Product of the distinct irreducible factors of g, monic."""
    out = PolyFp([1], g.p)
    for base, _ in squarefree_decomposition(g):
        out = out * base
    return out


def distinct_degree_factorization(g: PolyFp) -> list[tuple[int, PolyFp]]:
    """[(k, product of all irreducible factors of degree k)] for squarefree monic g."""
    p = g.p
    if g.degree < 1:
        raise ValueError("DDF needs degree >= 1")
    if not g.is_monic():
        raise ValueError("DDF needs a monic input")
    da = fpk.derivative(g.a, p)
    if len(da) == 0 or fpk.deg(fpk.gcd(g.a, da, p)) > 0:
        raise ValueError("DDF needs a squarefree input")
    blocks = []
    rem = g.a
    ctx = fpk.ModCtx(rem, p)
    h = ctx.frobenius(p)  # x^(p^k) mod rem, k = 1 below
    k = 1
    while fpk.deg(rem) >= 2 * k:
        G = fpk.gcd(rem, fpk.minus_x(h, p), p)
        if fpk.deg(G) > 0:
            blocks.append((k, PolyFp(G, p)))
            rem = fpk.div_exact(rem, G, p)
            if fpk.deg(rem) == 0:
                break
            ctx = fpk.ModCtx(rem, p)
            h = ctx.rem(h)
        k += 1
        if fpk.deg(rem) >= 2 * k:
            h = ctx.powmod(h, p)
    if fpk.deg(rem) > 0:
        blocks.append((fpk.deg(rem), PolyFp(rem, p)))
    return blocks


def _edf_split(block: np.ndarray, k: int, p: int, rng: random.Random) -> list[np.ndarray]:
    n = fpk.deg(block)
    if n == k:
        return [block]
    ctx = fpk.ModCtx(block, p)
    while True:
        a = fpk.from_list([rng.randrange(p) for _ in range(n)], p)
        if fpk.deg(a) < 1:
            continue
        if p == 2:
            # trace map sum a^(2^i), i < k
            t = a
            acc = a
            for _ in range(k - 1):
                t = ctx.mulmod(t, t)
                acc = fpk.add(acc, t, p)
            g1 = fpk.gcd(block, acc, p)
        else:
            s = ctx.powmod(a, (p**k - 1) // 2)
            s1 = fpk.sub(s, fpk.from_list([1], p), p)
            g1 = fpk.gcd(block, s1, p)
        if 0 < fpk.deg(g1) < n:
            g2 = fpk.div_exact(block, g1, p)
            return _edf_split(g1, k, p, rng) + _edf_split(g2, k, p, rng)


def equal_degree_factorization(block: PolyFp, k: int, *, seed: int = DEFAULT_SEED) -> list[PolyFp]:
    """Split a product of distinct degree-k irreducibles into its factors.

    Output is canonicalized by lexicographic coefficient order, so a
    fixed seed gives bit-identical results.
    """
    p = block.p
    if block.degree < 1 or block.degree % k:
        raise ValueError("block degree must be a positive multiple of k")
    rng = random.Random(f"{seed}:{p}:{k}:{block.coeffs}")
    parts = _edf_split(fpk.monic(block.a, p), k, p, rng)
    polys = [PolyFp(a, p) for a in parts]
    polys.sort(key=lambda f: f.coeffs)
    return polys


def factor(g: PolyFp, *, seed: int = DEFAULT_SEED) -> FactorizationFp:
    """Full factorization: squarefree decomposition, DDF, then EDF."""
    if g.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    p = g.p
    unit = int(g.a[-1])
    found: list[tuple[PolyFp, int]] = []
    if g.degree >= 1:
        for base, mult in squarefree_decomposition(g):
            for k, block in distinct_degree_factorization(base):
                for irr in equal_degree_factorization(block, k, seed=seed):
                    found.append((irr, mult))
    found.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return FactorizationFp(modulus=p, unit=unit, factors=tuple(found))


def splitting_degree(g: PolyFp) -> int:
    """Degree over F_p of the splitting field of g: lcm of the distinct
    irreducible factor degrees (multiplicities ignored), via DDF only."""
    if g.degree < 1:
        raise ValueError("splitting degree needs degree >= 1")
    part = squarefree_part(g)
    e = 1
    for k, _ in distinct_degree_factorization(part):
        e = math.lcm(e, k)
    return e


def splits_completely_distinct(g: PolyFp) -> bool:
    """True iff g has deg(g) distinct roots in F_p."""
    if g.degree < 1:
        raise ValueError("needs degree >= 1")
    p = g.p
    da = fpk.derivative(g.a, p)
    if len(da) == 0 or fpk.deg(fpk.gcd(g.a, da, p)) > 0:
        return False
    ctx = fpk.ModCtx(g.a, p)
    xp = ctx.frobenius(p)
    x_red = ctx.rem(np.array([0, 1], dtype=np.int64))
    return fpk.deg(fpk.sub(xp, x_red, p)) == -1


def roots_in_fp(g: PolyFp, *, seed: int = DEFAULT_SEED) -> list[int]:
    """All roots of g in F_p, multiplicities stripped, ascending."""
    if g.is_zero():
        raise ValueError("the zero polynomial has every root")
    p = g.p
    if g.degree == 0:
        return []
    part = squarefree_part(g)
    ctx = fpk.ModCtx(part.a, p)
    xp = ctx.frobenius(p)
    lin = fpk.gcd(part.a, fpk.minus_x(xp, p), p)
    if fpk.deg(lin) == 0:
        return []
    roots = []
    for f in equal_degree_factorization(PolyFp(lin, p), 1, seed=seed):
        roots.append((-int(f.a[0])) % p)
    return sorted(roots)

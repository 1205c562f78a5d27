import random

import numpy as np
import pytest

from arbordeg import fpkernel as fpk


def naive_mul(a, b, p):
    if not len(a) or not len(b):
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + int(x) * int(y)) % p
    while out and out[-1] == 0:
        out.pop()
    return out


@pytest.mark.parametrize("p", [2, 3, 5, 13, 101, 65537])
def test_mul_matches_naive(p):
    rng = random.Random(p)
    for _ in range(60):
        a = fpk.from_list([rng.randrange(p) for _ in range(rng.randrange(0, 30))], p)
        b = fpk.from_list([rng.randrange(p) for _ in range(rng.randrange(1, 30))], p)
        assert fpk.mul(a, b, p).tolist() == naive_mul(a, b, p)


def test_divmod_reconstruction():
    rng = random.Random(2)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 13, 101])
        a = fpk.from_list([rng.randrange(p) for _ in range(rng.randrange(0, 40))], p)
        b = fpk.from_list([rng.randrange(p) for _ in range(rng.randrange(1, 20))], p)
        if not len(b):
            continue
        q, r = fpk.divmod_poly(a, b, p)
        assert fpk.deg(r) < fpk.deg(b)
        recon = fpk.add(fpk.mul(q, b, p), r, p)
        assert recon.tolist() == a.tolist()


def test_modctx_newton_path_alignment():
    """Quotients with zero low coefficients once exercised a reversal bug."""
    rng = random.Random(4)
    for _ in range(150):
        p = rng.choice([2, 3, 5, 31])
        n = rng.randrange(48, 140)  # above the Newton threshold
        g = fpk.from_list([rng.randrange(p) for _ in range(n)] + [1], p)
        ctx = fpk.ModCtx(g, p)
        qdeg = rng.randrange(0, n)
        qq = [0] * (qdeg + 1)
        qq[-1] = rng.randrange(1, p)
        r = [rng.randrange(p) for _ in range(rng.randrange(0, n))]
        a = fpk.add(fpk.mul(g, fpk.from_list(qq, p), p), fpk.from_list(r, p), p)
        assert ctx.rem(a).tolist() == fpk.rem(a, g, p).tolist()


def test_modctx_matches_schoolbook_small():
    rng = random.Random(5)
    for _ in range(150):
        p = rng.choice([2, 3, 5, 13, 101])
        n = rng.randrange(1, 40)
        g = fpk.from_list([rng.randrange(p) for _ in range(n)] + [1], p)
        ctx = fpk.ModCtx(g, p)
        a = fpk.from_list([rng.randrange(p) for _ in range(rng.randrange(0, 2 * n + 3))], p)
        assert ctx.rem(a).tolist() == fpk.rem(a, g, p).tolist()


def test_compose_matches_horner():
    rng = random.Random(6)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 13])
        n = rng.randrange(2, 60)
        g = fpk.from_list([rng.randrange(p) for _ in range(n)] + [1], p)
        ctx = fpk.ModCtx(g, p)
        a = fpk.from_list([rng.randrange(p) for _ in range(rng.randrange(1, n + 2))], p)
        b = fpk.from_list([rng.randrange(p) for _ in range(rng.randrange(0, n + 1))], p)
        acc = fpk.from_list([], p)
        for c in a[::-1]:
            acc = ctx.rem(fpk.add(fpk.mul(acc, b, p), fpk.from_list([int(c)], p), p))
        assert ctx.compose(a, b).tolist() == acc.tolist()


def test_frobenius_power_matches_iteration():
    rng = random.Random(8)
    for _ in range(60):
        p = rng.choice([2, 3, 5, 13])
        n = rng.randrange(2, 24)
        g = fpk.from_list([rng.randrange(p) for _ in range(n)] + [1], p)
        ctx = fpk.ModCtx(g, p)
        k = rng.randrange(1, 9)
        h = fpk.from_list([0, 1], p)
        for _ in range(k):
            h = ctx.powmod(h, p)
        assert ctx.frobenius_power(p, k).tolist() == h.tolist()


def test_gcd_agrees_with_euclid_over_products():
    rng = random.Random(10)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 13])
        g = fpk.from_list([rng.randrange(p) for _ in range(rng.randrange(1, 10))] + [1], p)
        a = fpk.mul(g, fpk.from_list([rng.randrange(p) for _ in range(6)] + [1], p), p)
        b = fpk.mul(g, fpk.from_list([rng.randrange(p) for _ in range(5)] + [1], p), p)
        got = fpk.gcd(a, b, p)
        # gcd must be divisible by g and divide both
        assert fpk.deg(fpk.divmod_poly(got, g, p)[1]) == -1 or fpk.deg(got) >= fpk.deg(g)
        assert fpk.deg(fpk.divmod_poly(a, got, p)[1]) == -1
        assert fpk.deg(fpk.divmod_poly(b, got, p)[1]) == -1


def test_large_degree_roundtrip():
    p = 31
    rng = random.Random(11)
    n = 2048
    g = fpk.from_list([rng.randrange(p) for _ in range(n)] + [1], p)
    a = fpk.from_list([rng.randrange(p) for _ in range(n)], p)
    ctx = fpk.ModCtx(g, p)
    sq = ctx.mulmod(a, a)
    assert sq.tolist() == fpk.rem(fpk.mul(a, a, p), g, p).tolist()

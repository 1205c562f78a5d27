import math
import random
from fractions import Fraction

import mpmath
import pytest
import sympy

from arbordeg.errors import BadReductionError
from arbordeg.poly import (
    PolyFp,
    PolyQ,
    X_Q,
    compose,
    derivative,
    discriminant,
    is_separable,
    iterate,
    parse_poly,
    parse_rational,
    poly_x,
    reduce_mod_p,
    resultant,
)
from arbordeg.poly import _resultant_z_crt, _resultant_z_prs

X2M1 = PolyQ([-1, 0, 1])


def test_compose_examples():
    assert compose(PolyQ([0, 0, 1]), X2M1) == PolyQ([1, 0, -2, 0, 1])
    assert compose(X_Q, X2M1) == X2M1
    assert compose(X2M1, X2M1) == PolyQ([0, 0, -2, 0, 1])


def test_compose_rejects_mixed_moduli():
    with pytest.raises(ValueError):
        compose(PolyFp([0, 1], 5), PolyFp([0, 1], 7))


def test_iterate_examples():
    assert iterate(X2M1, 2) == PolyQ([0, 0, -2, 0, 1])
    assert iterate(X2M1, 0) == X_Q
    assert iterate(PolyQ([0, 0, 1]), 3) == PolyQ([0] * 8 + [1])


def test_iterate_additivity():
    rng = random.Random(1)
    for _ in range(20):
        d = rng.randrange(2, 5)
        f = PolyQ([Fraction(rng.randrange(-3, 4)) for _ in range(d)] + [1])
        a, b = rng.randrange(0, 4), rng.randrange(0, 3)
        assert iterate(f, a + b) == compose(iterate(f, a), iterate(f, b))


def test_derivative_examples():
    assert derivative(poly_x(5, 3)) == PolyQ([0, 0, 0, 0, 5])
    assert derivative(PolyQ([7])) == PolyQ([])
    assert derivative(PolyQ([0, 0, -2, 0, 1])) == PolyQ([0, -4, 0, 4])


def test_resultant_examples():
    assert resultant(PolyQ([-1, 0, 1]), PolyQ([0, 0, 1])) == 1
    assert resultant(X2M1, PolyQ([1])) == 1
    assert resultant(PolyQ([-2, 1]), PolyQ([-3, 1])) == -1
    with pytest.raises(ValueError):
        resultant(PolyQ([]), PolyQ([]))


def _to_sympy(g, x):
    return sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(g.coeffs))


def test_resultant_vs_sympy_randomized():
    """sympy drops the swap sign when deg f < deg g, so order the oracle call."""
    x = sympy.Symbol("x")
    rng = random.Random(11)
    for _ in range(80):
        dg, dh = rng.randrange(1, 7), rng.randrange(1, 7)
        g = PolyQ([Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)) for _ in range(dg)]
                  + [rng.randrange(1, 5)])
        h = PolyQ([Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)) for _ in range(dh)]
                  + [rng.randrange(1, 5)])
        mine = resultant(g, h)
        if g.degree >= h.degree:
            ref = Fraction(str(sympy.resultant(_to_sympy(g, x), _to_sympy(h, x), x)))
        else:
            ref = Fraction(str(sympy.resultant(_to_sympy(h, x), _to_sympy(g, x), x)))
            if (g.degree * h.degree) % 2:
                ref = -ref
        assert mine == ref


def test_resultant_symmetry_law():
    rng = random.Random(12)
    for _ in range(60):
        g = PolyQ([rng.randrange(-9, 10) for _ in range(rng.randrange(1, 6))] + [1])
        h = PolyQ([rng.randrange(-9, 10) for _ in range(rng.randrange(1, 6))] + [1])
        sign = -1 if (g.degree * h.degree) % 2 else 1
        assert resultant(g, h) == sign * resultant(h, g)


def test_resultant_multiplicative_in_second_arg():
    rng = random.Random(13)
    for _ in range(40):
        g = PolyQ([rng.randrange(-5, 6) for _ in range(rng.randrange(1, 5))] + [1])
        h1 = PolyQ([rng.randrange(-5, 6) for _ in range(rng.randrange(1, 4))] + [1])
        h2 = PolyQ([rng.randrange(-5, 6) for _ in range(rng.randrange(1, 4))] + [1])
        assert resultant(g, h1 * h2) == resultant(g, h1) * resultant(g, h2)


def test_prs_and_crt_routes_agree():
    rng = random.Random(14)
    for _ in range(25):
        n = rng.randrange(4, 30)
        A = [rng.randrange(-(10**6), 10**6) for _ in range(n)] + [rng.randrange(1, 10**6)]
        B = [rng.randrange(-(10**6), 10**6) for _ in range(n - 2)] + [rng.randrange(1, 10**6)]
        assert _resultant_z_prs(A, B) == _resultant_z_crt(A, B)
        assert _resultant_z_prs(A, B) == _resultant_z_crt(A, B, early_term=False)


def test_discriminant_examples():
    assert discriminant(PolyQ([-4, 0, 1])) == 16
    assert discriminant(PolyQ([1, 0, 1])) == -4
    with pytest.raises(ValueError):
        discriminant(PolyQ([3]))


def test_discriminant_two_routes_agree():
    # exact resultant route vs 200-bit root-product evaluation
    g = PolyQ([-3, 0, -2, 0, 1])  # (x^2-3)(x^2+1)
    exact = discriminant(g)
    mpmath.mp.prec = 200
    roots = [mpmath.sqrt(3), -mpmath.sqrt(3), mpmath.mpc(0, 1), mpmath.mpc(0, -1)]
    prod = mpmath.mpf(1)
    for i in range(4):
        for j in range(i + 1, 4):
            prod *= (roots[i] - roots[j]) ** 2
    assert abs(complex(prod).real - float(exact)) < 1e-30 * abs(float(exact))


def test_discriminant_reduction_compatibility():
    rng = random.Random(15)
    for _ in range(40):
        d = rng.randrange(2, 6)
        g = PolyQ([rng.randrange(-9, 10) for _ in range(d)] + [1])
        p = rng.choice([7, 11, 13, 101])
        if p <= g.degree:
            continue
        disc_q = discriminant(g)
        if disc_q.denominator % p == 0 or disc_q.numerator % p == 0 and disc_q == 0:
            continue
        gp = reduce_mod_p(g, p)
        if gp.degree != g.degree:
            continue
        dq_mod = disc_q.numerator * pow(disc_q.denominator, -1, p) % p
        # disc over F_p via the same formula
        from arbordeg import fpkernel as fpk
        n = gp.degree
        r = fpk._inv_mod_p(int(gp.a[-1]), p)
        res_p = _fp_resultant(gp, derivative(gp))
        sign = p - 1 if (n * (n - 1) // 2) % 2 else 1
        assert dq_mod == sign * res_p * r % p


def _fp_resultant(g, h):
    from arbordeg.poly import _resultant_fp
    return _resultant_fp(g.a, h.a, g.p) % g.p


def test_reduce_mod_p_examples():
    assert reduce_mod_p(X2M1, 5) == PolyFp([4, 0, 1], 5)
    assert reduce_mod_p(PolyQ([-3, 0, -2, 0, 1]), 3) == PolyFp([0, 0, 1, 0, 1], 3)
    with pytest.raises(BadReductionError) as ei:
        reduce_mod_p(PolyQ([Fraction(-1, 5), 0, 1]), 5)
    assert ei.value.index == 0


def test_reduction_commutes_with_iteration():
    rng = random.Random(16)
    for _ in range(30):
        d = rng.randrange(2, 4)
        f = PolyQ([rng.randrange(-9, 10) for _ in range(d)] + [1])
        p = rng.choice([5, 7, 13])
        n = rng.randrange(0, 4)
        assert reduce_mod_p(iterate(f, n), p) == iterate(reduce_mod_p(f, p), n)


def test_is_separable():
    assert is_separable(X2M1)
    assert not is_separable(PolyQ([0, 0, 1]))
    assert is_separable(iterate(X2M1, 3) - 3)
    assert is_separable(PolyFp([4, 0, 1], 5))
    assert not is_separable(PolyFp([0, 0, 1], 5))
    # p-th power over F_p: derivative vanishes identically
    assert not is_separable(PolyFp([4, 0, 0, 0, 0, 1], 5))
    # inseparable over Q with dense coefficients
    sq = PolyQ([1, 2, 3, 1]) * PolyQ([1, 2, 3, 1]) * PolyQ([5, 1])
    assert not is_separable(sq)


def test_parse_poly_and_rationals():
    assert parse_poly("[-1, 0, 1]") == X2M1
    assert parse_poly(["-1/2", 0, 1]) == PolyQ([Fraction(-1, 2), 0, 1])
    assert parse_rational("7/3") == Fraction(7, 3)
    with pytest.raises(ValueError):
        parse_rational(0.5)
    with pytest.raises(ValueError):
        parse_poly("-1,0,1")
    assert X2M1.to_strings() == ["-1", "0", "1"]


def test_polyq_arithmetic_basics():
    assert (X2M1 + 1) == PolyQ([0, 0, 1])
    assert (X2M1 - X2M1).is_zero()
    assert (X2M1 * 0).is_zero()
    f = poly_x(3, Fraction(1, 2))
    assert f.degree == 3 and f(1) == Fraction(1, 2)
    q, r = divmod(PolyFp([1, 2, 3], 5), PolyFp([4, 1], 5))
    assert q * PolyFp([4, 1], 5) + r == PolyFp([1, 2, 3], 5)

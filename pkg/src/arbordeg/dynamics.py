"""Critical orbits, the PCF decision, and discriminant support sets.

forward_orbit is a total decision procedure for monic rational maps:
the orbit either revisits an exact value (periodic/preperiodic), grows
past an archimedean bound that forces monotone escape, or picks up a
p-adic pole that forces the valuation to sink forever.  Everything else
in the module is built on top of that guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedPolynomialError, WorkLimitError
from .exact_arith import factor_integer, valuation
from .poly import PolyQ, derivative, discriminant, is_separable, iterate

_STEP_BUDGET = 100_000


@dataclass(frozen=True)
class CriticalOrbit:
    """Forward orbit of a starting point with tail/cycle split or escape witness.

    `values` holds f(z0), f^2(z0), ...; for a periodic outcome it extends
    through index tail+cycle so values[tail+cycle] == values[tail], with
    tail counted from z0 itself (tail 0 means z0 is periodic).
    """

    start: Fraction
    values: tuple[Fraction, ...]
    outcome: str  # "periodic" | "escaped"
    tail: int | None = None
    cycle: int | None = None
    escape_step: int | None = None
    witness: tuple | None = None  # ("archimedean", bound) | ("p-adic", p)

    def is_periodic(self) -> bool:
        return self.outcome == "periodic"

    def value_set(self) -> frozenset:
        """The distinct strict-orbit values {f^n(z0) : n >= 1}."""
        return frozenset(self.values)


def _escape_bound(f: PolyQ) -> Fraction:
    return 2 + sum(abs(c) for c in f.coeffs[:-1])


def _padic_thresholds(f: PolyQ) -> dict[int, Fraction]:
    """Per bad prime p, the valuation below which the orbit must sink.

    If v_p(z) < min(0, v_p(c_i)/(d-i)) then v_p(z^d) is strictly below
    every other term of f(z), so v_p(f(z)) = d*v_p(z) < v_p(z).
    """
    d = f.degree
    out: dict[int, Fraction] = {}
    for i, c in enumerate(f.coeffs[:-1]):
        if c == 0:
            continue
        for p, _ in factor_integer(c.denominator).factors:
            t = Fraction(valuation(c, p), d - i)
            out[p] = min(out.get(p, Fraction(0)), t)
    return out


def forward_orbit(f: PolyQ, z0) -> CriticalOrbit:
    """Iterate z0 under monic f until a repeat or a proven escape."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("forward_orbit needs a monic polynomial of degree >= 1")
    z0 = Fraction(z0)
    bound = _escape_bound(f)
    thresholds = _padic_thresholds(f)
    bad = set(thresholds)

    def escape_witness(z, step):
        if abs(z) > bound:
            return CriticalOrbit(
                start=z0, values=tuple(values), outcome="escaped",
                escape_step=step, witness=("archimedean", bound),
            )
        if z.denominator > 1:
            for p, _ in factor_integer(z.denominator).factors:
                if p not in bad:
                    return CriticalOrbit(
                        start=z0, values=tuple(values), outcome="escaped",
                        escape_step=step, witness=("p-adic", p),
                    )
                if Fraction(valuation(z, p)) < thresholds[p]:
                    return CriticalOrbit(
                        start=z0, values=tuple(values), outcome="escaped",
                        escape_step=step, witness=("p-adic", p),
                    )
        return None

    values: list[Fraction] = []
    seen = {z0: 0}
    w = escape_witness(z0, 0)
    if w is not None:
        return w
    z = z0
    for step in range(1, _STEP_BUDGET):
        z = f(z)
        values.append(z)
        w = escape_witness(z, step)
        if w is not None:
            return w
        if z in seen:
            first = seen[z]
            cycle = step - first
            tail = first
            # extend values through index tail+cycle (1-based value k is f^k(z0))
            while len(values) < tail + cycle + 1:
                z = f(z)
                values.append(z)
            return CriticalOrbit(
                start=z0, values=tuple(values), outcome="periodic",
                tail=tail, cycle=cycle,
            )
        seen[z] = step
    raise WorkLimitError("orbit step budget exhausted; escape bounds failed to fire")


def critical_points(f: PolyQ) -> tuple[list[Fraction], bool]:
    """Rational roots of f', plus a flag for irrational critical points.

    Uses the rational-root sieve on the primitive integer form of f'.
    """
    if not f.is_monic() or f.degree < 2:
        raise ValueError("critical points need a monic polynomial of degree >= 2")
    df = derivative(f)
    den = math.lcm(*[c.denominator for c in df.coeffs])
    ints = [c.numerator * (den // c.denominator) for c in df.coeffs]
    roots: list[Fraction] = []
    # root 0 first
    shift = 0
    while shift < len(ints) and ints[shift] == 0:
        shift += 1
    if shift:
        roots.append(Fraction(0))
        ints = ints[shift:]
    if len(ints) > 1:
        f0 = factor_integer(ints[0])
        fl = factor_integer(ints[-1])
        if not (f0.complete and fl.complete):
            raise WorkLimitError("coefficient factorization budget exceeded in root sieve")
        for u in _divisors(f0):
            for w in _divisors(fl):
                for cand in (Fraction(u, w), Fraction(-u, w)):
                    if cand not in roots and _eval_int(ints, cand) == 0:
                        roots.append(cand)
    # deflate all rational roots to see what is left
    rem = ints
    for r in roots:
        while len(rem) > 1 and _eval_int(rem, r) == 0:
            rem = _deflate(rem, r)
    has_irrational = len(rem) > 1
    return sorted(roots), has_irrational


def _divisors(fact) -> list[int]:
    out = [1]
    for p, e in fact.factors:
        out = [v * p**i for v in out for i in range(e + 1)]
    return sorted(out)


def _eval_int(ints: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(ints):
        acc = acc * x + c
    return acc


def _deflate(ints: list[int], r: Fraction) -> list[int]:
    """Exact synthetic division of an integer poly by (x - r), r rational."""
    out = [Fraction(0)] * (len(ints) - 1)
    acc = Fraction(0)
    for i in range(len(ints) - 1, 0, -1):
        acc = acc * r + ints[i]
        out[i - 1] = acc
    den = math.lcm(*[c.denominator for c in out]) if out else 1
    return [int(c * den) for c in out]


def is_pcf(f: PolyQ) -> bool:
    """True iff every critical orbit of f is finite.

    Restricted to rational critical points; irrational ones raise
    UnsupportedPolynomialError.
    """
    pts, has_irrational = critical_points(f)
    if has_irrational:
        raise UnsupportedPolynomialError(
            "PCF decision is only supported for rational critical points"
        )
    return all(forward_orbit(f, g).is_periodic() for g in pts)


def unicritical_period(d: int, c) -> int | None:
    """Minimal n0 >= 1 with f^n0(0) = 0 for f = x^d - c, if 0 is strictly periodic."""
    if d < 2:
        raise ValueError("d must be >= 2")
    f = PolyQ([-Fraction(c)] + [0] * (d - 1) + [1])
    orbit = forward_orbit(f, 0)
    if orbit.is_periodic() and orbit.tail == 0:
        return orbit.cycle
    return None


def critical_orbits(f: PolyQ) -> list[CriticalOrbit]:
    """Forward orbits of all critical points (rational ones required)."""
    pts, has_irrational = critical_points(f)
    if has_irrational:
        raise UnsupportedPolynomialError(
            "critical orbits are only supported for rational critical points"
        )
    return [forward_orbit(f, g) for g in pts]


def alpha_on_critical_orbit(f: PolyQ, alpha) -> bool:
    """Membership of alpha in the strict critical orbits.

    Exact for PCF f.  For escaping orbits membership is checked on the
    computed prefix only; sound here because every caller rejects
    post-critically infinite inputs separately.
    """
    alpha = Fraction(alpha)
    return any(alpha in orbit.value_set() for orbit in critical_orbits(f))


def preimage_separability(f: PolyQ, alpha, N: int, *, degree_cap: int = 4096) -> bool:
    """Whether f^N - alpha is separable (iff it has d^N distinct preimages)."""
    if not f.is_monic() or f.degree < 2:
        raise ValueError("needs a monic polynomial of degree >= 2")
    if N < 1:
        raise ValueError("N must be >= 1")
    if f.degree**N > degree_cap:
        raise WorkLimitError(f"degree {f.degree}^{N} exceeds cap {degree_cap}")
    g = iterate(f, N) - Fraction(alpha)
    return is_separable(g)


@dataclass(frozen=True)
class SupportSet:
    """Finite prime set outside which disc(f^N - alpha) is a unit.

    `primes` is the sound orbit-route superset (critical-orbit products,
    deg f, disc f, and all bad-reduction primes).  `resultant_route`
    holds the primes actually observed in disc numerators for N up to
    `n_checked`; it is contained in `primes` (checked at construction).
    """

    primes: frozenset[int]
    orbit_route: frozenset[int]
    resultant_route: frozenset[int]
    provenance: dict
    stabilized_at: int | None
    n_checked: int

    def __contains__(self, p: int) -> bool:
        return p in self.primes


def _numerator_primes(x: Fraction, budget_note: list) -> frozenset[int]:
    n = x.numerator
    if n == 0:
        return frozenset()
    fz = factor_integer(n)
    if not fz.complete:
        budget_note.append(n)
    return frozenset(fz.primes())


def support_set(
    f: PolyQ,
    alpha,
    N_max: int,
    *,
    disc_degree_cap: int = 1024,
    early_term: bool = True,
    with_resultant_route: bool = True,
) -> SupportSet:
    """S(f, alpha) by the scalable orbit-product route, cross-checked
    against exact disc(f^N - alpha) supports up to the degree cap.

    Requires PCF f (the orbit route needs finite orbits) with rational
    critical points, and alpha outside the strict critical orbits.
    """
    if not f.is_monic() or f.degree < 2:
        raise ValueError("needs a monic polynomial of degree >= 2")
    alpha = Fraction(alpha)
    orbits = critical_orbits(f)
    if not all(o.is_periodic() for o in orbits):
        raise WorkLimitError(
            "support_set is restricted to PCF polynomials (orbit route must terminate)"
        )
    if any(alpha in o.value_set() for o in orbits):
        raise ValueError("alpha lies on a critical orbit (outside the contract)")

    budget_note: list = []
    provenance: dict = {}
    orbit_primes: set[int] = set()

    def note(p, why):
        if p not in provenance:
            provenance[p] = why
        orbit_primes.add(p)

    for c in list(f.coeffs) + [alpha]:
        for p, _ in factor_integer(c.denominator).factors:
            note(p, "bad reduction")
    for p, _ in factor_integer(f.degree).factors:
        note(p, "divides deg f")
    disc_f = discriminant(f)
    if disc_f != 0:
        for p in _numerator_primes(disc_f, budget_note):
            note(p, "divides disc f")
        for p, _ in factor_integer(disc_f.denominator).factors:
            note(p, "bad reduction (disc f)")
    for orbit in orbits:
        for beta in orbit.value_set():
            for p in _numerator_primes(beta - alpha, budget_note):
                note(p, f"divides numerator(beta - alpha), beta = {beta}")
    if budget_note:
        raise WorkLimitError(f"factorization budget exceeded on {budget_note[:1]}")

    # resultant route: exact discriminant supports while the degree allows
    resultant_primes: set[int] = set()
    stabilized_at = None
    n_checked = 0
    d = f.degree
    g = PolyQ([0, 1])
    for n in range(1, N_max + 1):
        if not with_resultant_route or d**n > disc_degree_cap:
            break
        from .poly import compose  # local import to keep module init light

        g = compose(f, g)
        disc_n = discriminant(g - alpha, early_term=early_term)
        n_checked = n
        num = abs(disc_n.numerator)
        new = set()
        for p in sorted(orbit_primes):
            v = 0
            while num % p == 0:
                num //= p
                v += 1
            if v and p not in resultant_primes:
                new.add(p)
                provenance.setdefault(p, f"divides disc(f^{n} - alpha)")
        if num != 1:
            # a prime outside the orbit route divides the discriminant:
            # the containment theorem failed, which is an implementation bug
            from .errors import FalsificationError

            raise FalsificationError(
                "disc support escaped the orbit-route set",
                {"N": n, "cofactor": num},
            )
        if new:
            resultant_primes |= new
            stabilized_at = n
    return SupportSet(
        primes=frozenset(orbit_primes),
        orbit_route=frozenset(orbit_primes),
        resultant_route=frozenset(resultant_primes),
        provenance=provenance,
        stabilized_at=stabilized_at,
        n_checked=n_checked,
    )

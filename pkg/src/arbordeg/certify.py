"""Degree lower-bound certificates for f = x^d - c over Q.

The pipeline: find a periodic-reduction prime p (0 becomes periodic for
f mod p, with alpha + c a p-unit), then for each level N compute the
splitting degree e_N of f^N - alpha over F_p.  Each e_N divides the
global arboreal degree D_N, and the root-of-unity check
d^(m_N) | p^(e_N) - 1 pins the cyclotomic content that forces e_N to
grow like d^(N/n0).

Splitting degrees for all levels come from an incremental engine that
factors level N+1 out of the factor blocks of level N: the preimages of
a root of an irreducible u sit above u, so u's children are found by
splitting u(f(x)), whose factor degrees are constrained multiples of
deg(u).  Single-irreducible blocks usually resolve by pure character
arithmetic (a norm evaluation) with no polynomial factorization at all;
the rest fall back to Frobenius-fixed-point gcds.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fpkernel as fpk
from .dynamics import SupportSet, unicritical_period
from .errors import FalsificationError, SearchExhaustedError
from .exact_arith import (
    factor_integer,
    is_prime,
    mult_order,
    order_constant,
    primes_up_to,
    valuation,
)
from .poly import PolyQ, iterate, poly_x, reduce_mod_p
from .ff_factor import DEFAULT_SEED, splits_completely_distinct

# ---------------------------------------------------------------------------
# incremental factor-degree engine for f^N - alpha over F_q
# ---------------------------------------------------------------------------

_MERGE_MAX_DEGREE = 64
_SEQ_FROBENIUS_MAX = 4


def _compose_with_f(P: np.ndarray, d: int, c: int, q: int) -> np.ndarray:
    """P(x^d - c) by Horner; multiplication by the sparse f is a shift."""
    res = np.array([int(P[-1]) % q], dtype=np.int64)
    for i in range(len(P) - 2, -1, -1):
        new = np.zeros(len(res) + d, dtype=np.int64)
        new[d:] = res
        new[: len(res)] -= c * res
        new[0] += int(P[i])
        res = new % q
    return fpk.trim(res)


def _candidate_ratios(d: int, q: int, k: int) -> list[int]:
    """Possible deg(child)/deg(parent) ratios for factors of x^d - a over F_(q^k)."""
    if d == 2:
        return [1, 2]
    if is_prime(d):
        o1 = mult_order(q, d)
        o = o1 // math.gcd(o1, k)
        return [1, d] if o == 1 else [1, o]
    if d == 4:
        return [1, 2, 4]
    return list(range(1, d + 1))


def _synthetic_divide(P: np.ndarray, root: int, q: int) -> np.ndarray:
    out = np.zeros(len(P) - 1, dtype=np.int64)
    acc = 0
    for i in range(len(P) - 1, 0, -1):
        acc = (acc * root + int(P[i])) % q
        out[i - 1] = acc
    return fpk.trim(out)


class IterateFactorEngine:
    """Distinct-factor degrees of f^N - alpha over F_q, level by level.

    State is a list of blocks (k, P, m): P a product of m distinct monic
    irreducibles of degree k, blocks pairwise coprime, their union being
    the distinct factors of f^N - alpha.  Single-irreducible blocks are
    advanced by character arithmetic where the binomial theory allows;
    everything else goes through Frobenius gcd extraction.
    """

    def __init__(self, q: int, d: int, c: int, alpha: int, *, shortcuts: bool = True):
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        if d < 2:
            raise ValueError("d must be >= 2")
        if math.gcd(d, q) != 1:
            raise ValueError(f"gcd({d}, {q}) != 1")
        self.q = q
        self.d = d
        self.c = c % q
        self.alpha = alpha % q
        self.shortcuts = shortcuts
        self.level = 0
        self._expected_total = 1
        self._blocks: list[tuple[int, np.ndarray, int]] = [
            (1, fpk.from_list([-self.alpha, 1], q), 1)
        ]
        self._degree_counts: list[dict[int, int]] = []
        self._merge_all = not (d == 2 or is_prime(d))

    def advance_to(self, N: int):
        while self.level < N:
            self._step()
        return self

    def degree_counts(self, N: int) -> dict[int, int]:
        """{factor degree: number of distinct irreducibles} for f^N - alpha."""
        if N < 1:
            raise ValueError("N must be >= 1")
        self.advance_to(N)
        return dict(self._degree_counts[N - 1])

    def splitting_degree(self, N: int) -> int:
        return math.lcm(*self.degree_counts(N).keys())

    # -- internals ---------------------------------------------------------

    def _step(self):
        q, d, c = self.q, self.d, self.c
        mc = (-c) % q
        children: list[tuple[int, np.ndarray, int]] = []
        strips = 0
        for k, P, m in self._blocks:
            if k == 1 and fpk.eval_at(P, mc, q) == 0:
                P = _synthetic_divide(P, mc, q)
                m -= 1
                children.append((1, fpk.from_list([0, 1], q), 1))
                strips += 1
                if m == 0:
                    continue
            out = self._advance_block(k, P, m)
            children.extend(out)
        self._expected_total = d * self._expected_total - (d - 1) * strips
        merged = self._merge(children)
        total = sum(k * m for k, _, m in merged)
        if total != self._expected_total:
            raise FalsificationError(
                "engine degree bookkeeping failed",
                {"level": self.level + 1, "total": total, "expected": self._expected_total},
            )
        self._blocks = merged
        counts: dict[int, int] = {}
        for k, _, m in merged:
            counts[k] = counts.get(k, 0) + m
        self._degree_counts.append(counts)
        self.level += 1

    def _merge(self, blocks):
        by_deg: dict[int, list] = {}
        keep = []
        for k, P, m in blocks:
            if k <= _MERGE_MAX_DEGREE or self._merge_all:
                by_deg.setdefault(k, []).append((P, m))
            else:
                keep.append((k, P, m))
        q = self.q
        for k, entries in sorted(by_deg.items()):
            polys = [P for P, _ in entries]
            m = sum(mm for _, mm in entries)
            while len(polys) > 1:  # balanced product
                nxt = [
                    fpk.mul(polys[i], polys[i + 1], q) if i + 1 < len(polys) else polys[i]
                    for i in range(0, len(polys), 2)
                ]
                polys = nxt
            keep.append((k, polys[0], m))
        keep.sort(key=lambda b: b[0])
        return keep

    def _advance_block(self, k: int, P: np.ndarray, m: int):
        q, d, c = self.q, self.d, self.c
        if m == 1 and self.shortcuts:
            out = self._single_shortcut(k, P)
            if out is not None:
                return out
        W = _compose_with_f(P, d, c, q)
        return self._split_by_degrees(k, W)

    def _single_shortcut(self, k: int, P: np.ndarray):
        """Children of one irreducible via the norm character, when the
        binomial x^d - a has a split pattern readable from F_q data."""
        q, d, c = self.q, self.d, self.c
        if q == 2:
            return None
        norm = fpk.eval_at(P, (-c) % q, q)  # = (-1)^k * N(gamma + c)
        if k % 2:
            norm = (-norm) % q
        if d == 2:
            chi = pow(norm, (q - 1) // 2, q)
            W = _compose_with_f(P, d, c, q)
            if chi == 1:
                return [(k, W, 2)]
            return [(2 * k, W, 1)]
        if is_prime(d) and (q - 1) % d == 0:
            chi = pow(norm, (q - 1) // d, q)
            W = _compose_with_f(P, d, c, q)
            if chi == 1:
                return [(k, W, d)]
            return [(d * k, W, 1)]
        return None

    def _frobenius_to(self, ctx: fpk.ModCtx, e: int, xq):
        if e <= _SEQ_FROBENIUS_MAX:
            h = xq
            for _ in range(e - 1):
                h = ctx.powmod(h, self.q)
            return h
        return ctx.frobenius_power(self.q, e, xq=xq)

    def _split_by_degrees(self, k: int, W: np.ndarray):
        """Partition W (product of irreducibles of degrees k*j, j in the
        candidate set) by gcds against Frobenius fixed points."""
        q = self.q
        ratios = _candidate_ratios(self.d, q, k)
        out = []
        rem = W
        ctx = None
        xq = None
        for idx, j in enumerate(ratios):
            drem = fpk.deg(rem)
            if drem == 0:
                break
            if idx == len(ratios) - 1:
                # everything left has the last candidate degree
                out.append((k * j, rem, drem // (k * j)))
                rem = None
                break
            if drem < 2 * k * j:
                # a single factor remains; its degree is drem
                out.append((drem, rem, 1))
                rem = None
                break
            if ctx is None or fpk.deg(ctx.g) != drem:
                ctx = fpk.ModCtx(rem, q)
                xq = ctx.frobenius(q)
            F = self._frobenius_to(ctx, k * j, xq)
            G = fpk.gcd(rem, fpk.minus_x(F, q), q)
            dG = fpk.deg(G)
            if dG == drem:
                out.append((k * j, rem, drem // (k * j)))
                rem = None
                break
            if dG > 0:
                out.append((k * j, G, dG // (k * j)))
                rem = fpk.div_exact(rem, G, q)
                ctx = None
        if rem is not None and fpk.deg(rem) > 0:
            out.append((fpk.deg(rem), rem, 1))
        for kk, _, m in out:
            if m * kk <= 0 or (kk % k):
                raise FalsificationError(
                    "engine produced an inconsistent block",
                    {"parent_degree": k, "child": (kk, m)},
                )
        return out


# ---------------------------------------------------------------------------
# periodic-reduction primes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicReductionPrime:
    """Prime p making 0 periodic for x^d - c mod p, found at iterate found_at_n.

    Invariants: p coprime to d, v_p(c) >= 0, v_p(alpha + c) = 0, and n0 is
    the minimal period of 0 under x^d - c mod p.
    """

    p: int
    n0: int
    found_at_n: int


def period_of_zero_mod(q: int, d: int, c: int) -> int | None:
    """Minimal n >= 1 with f^n(0) = 0 mod q for f = x^d - c, else None."""
    z = 0
    seen = set()
    for n in range(1, 2 * q + 2):
        z = (pow(z, d, q) - c) % q
        if z == 0:
            return n
        if z in seen:
            return None
        seen.add(z)
    return None


def _check_periodic_prime(p: int, d: int, c: Fraction, alpha: Fraction) -> int | None:
    """n0 if p satisfies every PeriodicReductionPrime invariant, else None."""
    if d % p == 0:
        return None
    if valuation(c, p) < 0:
        return None
    if alpha + c == 0 or valuation(alpha + c, p) != 0:
        return None
    cp = int(c.numerator * pow(c.denominator, -1, p)) % p
    return period_of_zero_mod(p, d, cp)


_ORBIT_BITS_CAP = 1_000_000


def find_periodic_prime(
    d: int,
    c,
    alpha,
    *,
    n_search_max: int = 64,
    rho_budget: int = 1 << 22,
) -> PeriodicReductionPrime:
    """Search for a periodic-reduction prime for f = x^d - c and the base
    point alpha.

    PCF f with strictly periodic 0 short-circuits to the smallest prime of
    good reduction outside the critical-orbit support.  Otherwise the
    numerators of f^n(0) are factored for n = 1, 2, ...; the first prime
    that is coprime to d, has v_p(c) >= 0 and v_p(alpha+c) = 0, and is new
    to the orbit, wins (its minimal period divides n).  Primes hiding in
    an unfactored rho cofactor are skipped, not reported.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    c = Fraction(c)
    alpha = Fraction(alpha)
    if alpha == -c:
        raise ValueError("alpha = -c is excluded (certify against alpha' = 0 instead)")

    n0_global = unicritical_period(d, c)
    if n0_global is not None:
        # strictly periodic over Q: any good prime works; skip the critical
        # orbit's own primes so f^N - alpha stays separable mod p
        f = poly_x(d, c)
        orbit_val_primes: set[int] = set()
        z = Fraction(0)
        for _ in range(n0_global):
            z = f(z)
            diff = z - alpha
            if diff != 0:
                orbit_val_primes |= set(factor_integer(diff.numerator).primes())
        p = 2
        while True:
            n0 = None
            if p not in orbit_val_primes:
                n0 = _check_periodic_prime(p, d, c, alpha)
            if n0 is not None:
                return PeriodicReductionPrime(p=p, n0=n0, found_at_n=n0_global)
            p = _next_prime(p)

    seen_primes: set[int] = set()
    z = Fraction(0)
    f = poly_x(d, c)
    for n in range(1, n_search_max + 1):
        z = f(z)
        if z.numerator.bit_length() > _ORBIT_BITS_CAP:
            raise SearchExhaustedError(
                f"orbit numerator exceeded {_ORBIT_BITS_CAP} bits at n={n}",
                scanned=(1, n),
            )
        if z == 0:
            continue
        fz = factor_integer(z.numerator, max_rho_iters=rho_budget)
        for p in fz.primes():
            if p in seen_primes:
                continue
            n0 = _check_periodic_prime(p, d, c, alpha)
            if n0 is not None:
                return PeriodicReductionPrime(p=p, n0=n0, found_at_n=n)
        seen_primes |= set(fz.primes())
    raise SearchExhaustedError(
        f"no periodic-reduction prime found for n <= {n_search_max}",
        scanned=(1, n_search_max),
    )


def _next_prime(p: int) -> int:
    p += 1
    while not is_prime(p):
        p += 1
    return p


# ---------------------------------------------------------------------------
# root-of-unity certificate rows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateRow:
    """One (prime, N) row: splitting degree and the root-of-unity check."""

    p: int
    N: int
    e_N: int
    m_N: int
    ru_check: bool
    bound: int


def _m_of(N: int, n0: int) -> int:
    return max(N // n0 - 1, 0) + 1


def _prepare_ru_inputs(q: int, d: int, c: int, alpha: int):
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if math.gcd(d, q) != 1:
        raise ValueError(f"gcd({d}, {q}) != 1")
    c %= q
    alpha %= q
    n0 = period_of_zero_mod(q, d, c)
    if n0 is None:
        raise ValueError(f"0 is not strictly periodic for x^{d} - {c} mod {q}")
    if (alpha + c) % q == 0:
        raise ValueError("alpha = -c mod q is excluded")
    return c, alpha, n0


def _ru_row(q: int, d: int, N: int, n0: int, e_N: int) -> CertificateRow:
    m_N = _m_of(N, n0)
    modulus = d**m_N
    ok = pow(q, e_N, modulus) == 1
    row = CertificateRow(p=q, N=N, e_N=e_N, m_N=m_N, ru_check=ok, bound=e_N)
    if not ok:
        raise FalsificationError(
            "root-of-unity divisibility failed (this contradicts a proved statement)",
            {"q": q, "d": d, "N": N, "n0": n0, "e_N": e_N, "m_N": m_N,
             "required_divisor": modulus, "group_order": q**e_N - 1},
        )
    return row


def verify_root_of_unity(q: int, d: int, c: int, alpha: int, N: int) -> CertificateRow:
    """Check that F_q(f^-N(alpha)) = F_(q^e_N) carries an element of
    multiplicative order d^m_N, via d^m_N | q^e_N - 1.

    Requires 0 strictly periodic for x^d - c mod q and alpha != -c mod q.
    A failed check raises FalsificationError: the statement is a proved
    theorem, so failure means an implementation bug.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    c, alpha, n0 = _prepare_ru_inputs(q, d, c, alpha)
    engine = IterateFactorEngine(q, d, c, alpha)
    e_N = engine.splitting_degree(N)
    return _ru_row(q, d, N, n0, e_N)


def root_of_unity_rows(q: int, d: int, c: int, alpha: int, N_max: int) -> list[CertificateRow]:
    """verify_root_of_unity for every N <= N_max, sharing one engine pass."""
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    c, alpha, n0 = _prepare_ru_inputs(q, d, c, alpha)
    engine = IterateFactorEngine(q, d, c, alpha)
    return [_ru_row(q, d, N, n0, engine.splitting_degree(N)) for N in range(1, N_max + 1)]


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticClaim:
    """D_N >= d^(floor(N/n0) - m0), one concrete admissible constant."""

    d: int
    n0: int
    m0: int

    @property
    def statement(self) -> str:
        return f"D_N >= {self.d}^(floor(N/{self.n0}) - {self.m0})"

    @property
    def growth_base(self) -> float:
        return self.d ** (1.0 / self.n0)


@dataclass(frozen=True)
class LowerBoundCertificate:
    d: int
    c: Fraction
    alpha: Fraction
    primes: tuple[PeriodicReductionPrime, ...]
    rows: tuple[CertificateRow, ...]
    aggregate: tuple[tuple[int, int], ...]  # (N, lcm of e_N over primes)
    asymptotic: AsymptoticClaim
    N_max: int
    degree_cap: int
    truncated_at: int | None
    seed: int = DEFAULT_SEED
    # set when the requested alpha was -c: rows certify alpha' = 0, and
    # level N for alpha' corresponds to level N+1 for the original alpha
    alpha_shifted_from: Fraction | None = None


def degree_lower_bound_table(
    d: int,
    c,
    alpha,
    primes,
    *,
    N_max: int,
    degree_cap: int = 4096,
    seed: int = DEFAULT_SEED,
) -> LowerBoundCertificate:
    """Assemble per-(prime, N) splitting-degree rows and the aggregate
    lcm lower bounds, for N up to N_max within the degree cap."""
    c = Fraction(c)
    alpha = Fraction(alpha)
    if not primes:
        raise ValueError("need at least one periodic-reduction prime")
    N_lim = N_max
    truncated_at = None
    while N_lim >= 1 and d**N_lim > degree_cap:
        N_lim -= 1
    if N_lim < N_max:
        truncated_at = N_lim
    if N_lim < 1:
        raise ValueError("degree cap excludes every N >= 1")
    rows = []
    for prp in sorted(primes, key=lambda t: t.p):
        p = prp.p
        cp = int(c.numerator * pow(c.denominator, -1, p)) % p
        ap = int(alpha.numerator * pow(alpha.denominator, -1, p)) % p
        rows.extend(root_of_unity_rows(p, d, cp, ap, N_lim))
    rows.sort(key=lambda r: (r.p, r.N))
    aggregate = []
    for N in range(1, N_lim + 1):
        agg = math.lcm(*[r.e_N for r in rows if r.N == N])
        aggregate.append((N, agg))
    n0_min = min(prp.n0 for prp in primes)
    p_star = min(prp.p for prp in primes if prp.n0 == n0_min)
    claim = AsymptoticClaim(d=d, n0=n0_min, m0=order_constant(d, p_star).m0)
    return LowerBoundCertificate(
        d=d, c=c, alpha=alpha,
        primes=tuple(sorted(primes, key=lambda t: t.p)),
        rows=tuple(rows), aggregate=tuple(aggregate), asymptotic=claim,
        N_max=N_max, degree_cap=degree_cap, truncated_at=truncated_at, seed=seed,
    )


def _rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def certificate_to_dict(cert: LowerBoundCertificate) -> dict:
    return {
        "format": "arbordeg-certificate/1",
        "d": cert.d,
        "c": _rat_str(cert.c),
        "alpha": _rat_str(cert.alpha),
        "primes": [
            {"p": t.p, "n0": t.n0, "found_at_n": t.found_at_n} for t in cert.primes
        ],
        "rows": [
            {"p": r.p, "N": r.N, "e_N": r.e_N, "m_N": r.m_N,
             "ru_check": r.ru_check, "bound": r.bound}
            for r in cert.rows
        ],
        "aggregate": [{"N": n, "lcm_e": v} for n, v in cert.aggregate],
        "asymptotic_claim": {
            "d": cert.asymptotic.d,
            "n0": cert.asymptotic.n0,
            "m0": cert.asymptotic.m0,
            "statement": cert.asymptotic.statement,
            "growth_base": f"{cert.d}^(1/{cert.asymptotic.n0})",
        },
        "config": {
            "N_max": cert.N_max,
            "degree_cap": cert.degree_cap,
            "truncated_at": cert.truncated_at,
            "seed": cert.seed,
            "alpha_shifted_from": (
                None if cert.alpha_shifted_from is None else _rat_str(cert.alpha_shifted_from)
            ),
        },
    }


def certificate_to_json(cert: LowerBoundCertificate) -> str:
    """Canonical serialization: sorted keys, two-space indent, newline."""
    return json.dumps(certificate_to_dict(cert), sort_keys=True, indent=2) + "\n"


def certificate_from_dict(doc: dict) -> LowerBoundCertificate:
    if doc.get("format") != "arbordeg-certificate/1":
        raise ValueError(f"unrecognized certificate format {doc.get('format')!r}")
    primes = tuple(
        PeriodicReductionPrime(p=e["p"], n0=e["n0"], found_at_n=e["found_at_n"])
        for e in doc["primes"]
    )
    rows = tuple(
        CertificateRow(p=e["p"], N=e["N"], e_N=e["e_N"], m_N=e["m_N"],
                       ru_check=e["ru_check"], bound=e["bound"])
        for e in doc["rows"]
    )
    ac = doc["asymptotic_claim"]
    cfg = doc["config"]
    shift = cfg.get("alpha_shifted_from")
    return LowerBoundCertificate(
        d=doc["d"], c=Fraction(doc["c"]), alpha=Fraction(doc["alpha"]),
        primes=primes, rows=rows,
        aggregate=tuple((e["N"], e["lcm_e"]) for e in doc["aggregate"]),
        asymptotic=AsymptoticClaim(d=ac["d"], n0=ac["n0"], m0=ac["m0"]),
        N_max=cfg["N_max"], degree_cap=cfg["degree_cap"],
        truncated_at=cfg["truncated_at"], seed=cfg["seed"],
        alpha_shifted_from=None if shift is None else Fraction(shift),
    )


def verify_certificate(cert: LowerBoundCertificate) -> LowerBoundCertificate:
    """Re-derive a certificate from scratch and compare field by field.

    Every periodic-reduction prime is re-validated against its invariants
    (coprimality, unit valuations, exact minimal period mod p) and all
    rows are recomputed by a fresh engine pass.  Returns the re-derived
    certificate; any discrepancy raises FalsificationError.
    """
    d, c, alpha = cert.d, cert.c, cert.alpha
    for prp in cert.primes:
        if not is_prime(prp.p):
            raise FalsificationError("stored prime is composite", {"p": prp.p})
        n0 = _check_periodic_prime(prp.p, d, c, alpha)
        if n0 != prp.n0:
            raise FalsificationError(
                "stored periodic-reduction prime failed revalidation",
                {"p": prp.p, "stored_n0": prp.n0, "recomputed_n0": n0},
            )
    rederived = degree_lower_bound_table(
        d, c, alpha, cert.primes,
        N_max=cert.N_max, degree_cap=cert.degree_cap, seed=cert.seed,
    )
    if cert.alpha_shifted_from is not None:
        import dataclasses

        rederived = dataclasses.replace(rederived, alpha_shifted_from=cert.alpha_shifted_from)
    if certificate_to_dict(rederived) != certificate_to_dict(cert):
        mine = certificate_to_dict(rederived)
        theirs = certificate_to_dict(cert)
        diff = {k: (theirs[k], mine[k]) for k in mine if mine[k] != theirs.get(k)}
        raise FalsificationError("certificate does not match re-derivation", diff)
    return rederived


# ---------------------------------------------------------------------------
# completely-split prime scans (Prop. "split primes are large" checks)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitScanReport:
    N: int
    d_pow_N: int
    p_max: int
    excluded: tuple[int, ...]
    split_primes: tuple[int, ...]
    least_split: int | None
    scanned: int


def split_scan(f: PolyQ, alpha, N: int, p_max: int, support: SupportSet) -> SplitScanReport:
    """Scan primes p <= p_max outside the support set and record those at
    which f^N - alpha has d^N distinct roots.

    Each completely-split prime must satisfy p >= d^N; a violation
    contradicts the residue-count theorem and raises FalsificationError.
    """
    alpha = Fraction(alpha)
    dN = f.degree**N
    split = []
    scanned = 0
    for p in primes_up_to(p_max):
        if p in support.primes:
            continue
        scanned += 1
        fp = reduce_mod_p(f, p)
        g = iterate(fp, N) - (alpha.numerator * pow(alpha.denominator, -1, p) % p)
        if splits_completely_distinct(g):
            if p < dN:
                raise FalsificationError(
                    "completely-split prime below d^N (contradicts the norm bound)",
                    {"p": p, "N": N, "d^N": dN},
                )
            split.append(p)
    return SplitScanReport(
        N=N, d_pow_N=dN, p_max=p_max,
        excluded=tuple(sorted(support.primes)),
        split_primes=tuple(split),
        least_split=split[0] if split else None,
        scanned=scanned,
    )


def serre_degree_bound(S, log_dE: float) -> int:
    """Least n with n*(sum_{p in S} log p + #S * log n) >= log_dE.

    The explicit form of the discriminant-versus-degree inequality for
    extensions of Q unramified outside S; monotone bisection on n.
    """
    if log_dE < 0:
        raise ValueError("log_dE must be >= 0")
    S = sorted(set(S))
    for p in S:
        if not is_prime(p):
            raise ValueError(f"{p} in S is not prime")
    if log_dE == 0:
        return 1
    if not S:
        raise ValueError("S must be nonempty when log_dE > 0")
    c1 = sum(math.log(p) for p in S)
    c2 = len(S)

    def phi(n: int) -> float:
        return n * (c1 + c2 * math.log(n))

    hi = 1
    while phi(hi) < log_dE:
        hi *= 2
    lo = max(1, hi // 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if phi(mid) >= log_dE:
            hi = mid
        else:
            lo = mid + 1
    return hi


# ---------------------------------------------------------------------------
# empirical growth data (conditional results collected as data only)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthRow:
    N: int
    least_split_prime: int | None
    log_abs_disc: float | None
    serre_bound: int | None


@dataclass(frozen=True)
class GrowthReport:
    """EMPIRICAL data table: least split primes and discriminant sizes.

    Nothing here asserts a conditional theorem; the table exists to let
    the exponential-growth predictions be eyeballed against data.
    """

    rows: tuple[GrowthRow, ...]
    label: str = "EMPIRICAL"


def grh_growth_report(
    f: PolyQ,
    alpha,
    N_max: int,
    p_max: int,
    *,
    support: SupportSet | None = None,
    disc_degree_cap: int = 1024,
) -> GrowthReport:
    from .dynamics import support_set as _support_set
    from .poly import compose, discriminant

    alpha = Fraction(alpha)
    if support is None:
        support = _support_set(f, alpha, N_max, disc_degree_cap=disc_degree_cap)
    S = sorted(support.primes)
    rows = []
    g = PolyQ([0, 1])
    d = f.degree
    for N in range(1, N_max + 1):
        scan = split_scan(f, alpha, N, p_max, support)
        log_disc = None
        serre = None
        if d**N <= disc_degree_cap:
            g = compose(f, g)
            disc = discriminant(g - alpha)
            if disc != 0:
                log_disc = float(log_abs_int(disc.numerator))
                serre = serre_degree_bound(S, log_disc) if log_disc > 0 else 1
        else:
            g = None
        rows.append(GrowthRow(
            N=N, least_split_prime=scan.least_split,
            log_abs_disc=log_disc, serre_bound=serre,
        ))
    return GrowthReport(rows=tuple(rows))


def log_abs_int(n: int) -> float:
    """log |n| that survives integers far beyond float range."""
    if n == 0:
        raise ValueError("log of zero")
    n = abs(n)
    bits = n.bit_length()
    if bits <= 900:
        return math.log(n)
    top = n >> (bits - 64)
    return math.log(top) + (bits - 64) * math.log(2)

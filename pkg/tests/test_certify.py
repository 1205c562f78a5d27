import json
import math
import random
from fractions import Fraction

import pytest

from arbordeg.certify import (
    IterateFactorEngine,
    PeriodicReductionPrime,
    certificate_from_dict,
    certificate_to_dict,
    certificate_to_json,
    degree_lower_bound_table,
    find_periodic_prime,
    grh_growth_report,
    period_of_zero_mod,
    root_of_unity_rows,
    serre_degree_bound,
    split_scan,
    verify_certificate,
    verify_root_of_unity,
)
from arbordeg.certify import _m_of
from arbordeg.dynamics import support_set
from arbordeg.errors import FalsificationError, SearchExhaustedError
from arbordeg.exact_arith import mult_order, valuation
from arbordeg.ff_factor import factor, splitting_degree
from arbordeg.poly import PolyQ, iterate, poly_x, poly_x_fp, reduce_mod_p

X2M1 = PolyQ([-1, 0, 1])


# --- engine -----------------------------------------------------------------


def test_engine_matches_direct_factorization():
    rng = random.Random(41)
    checked = 0
    while checked < 60:
        q = rng.choice([2, 3, 5, 7, 13, 31])
        d = rng.choice([2, 3, 4, 5])
        if math.gcd(d, q) != 1:
            continue
        c, alpha = rng.randrange(q), rng.randrange(q)
        N_max = 1
        while d ** (N_max + 1) <= 256:
            N_max += 1
        engine = IterateFactorEngine(q, d, c, alpha)
        for N in range(1, N_max + 1):
            g = iterate(poly_x_fp(q, d, c), N) - alpha
            if g.degree < 1:
                continue
            counts = {}
            for f, _ in factor(g).factors:
                counts[f.degree] = counts.get(f.degree, 0) + 1
            assert engine.degree_counts(N) == counts, (q, d, c, alpha, N)
            assert engine.splitting_degree(N) == splitting_degree(g)
        checked += 1


def test_engine_shortcut_paths_agree_with_plain():
    rng = random.Random(42)
    checked = 0
    while checked < 25:
        q = rng.choice([3, 5, 7, 13, 31])
        d = rng.choice([2, 3, 5])
        if math.gcd(d, q) != 1:
            continue
        c, alpha = rng.randrange(q), rng.randrange(q)
        N_max = {2: 9, 3: 5, 5: 3}[d]
        fast = IterateFactorEngine(q, d, c, alpha, shortcuts=True)
        slow = IterateFactorEngine(q, d, c, alpha, shortcuts=False)
        for N in range(1, N_max + 1):
            assert fast.degree_counts(N) == slow.degree_counts(N), (q, d, c, alpha, N)
        checked += 1


def test_period_of_zero_mod():
    assert period_of_zero_mod(5, 2, -1 % 5) == 3  # 0 -> 1 -> 2 -> 0 under x^2+1
    assert period_of_zero_mod(5, 2, 1) == 2
    assert period_of_zero_mod(7, 2, 2) is None  # x^2 - 2 mod 7: 0 -> 5 -> 2 -> 2


# --- periodic-reduction prime search ---------------------------------------


def test_find_periodic_prime_post_critically_infinite():
    prp = find_periodic_prime(2, -1, 0)  # f = x^2 + 1
    assert (prp.p, prp.n0, prp.found_at_n) == (5, 3, 3)


def test_find_periodic_prime_pcf_shortcut():
    prp = find_periodic_prime(2, 1, 3)  # f = x^2 - 1, PCF with n0 = 2
    assert (prp.p, prp.n0) == (5, 2)


def test_find_periodic_prime_rejects_alpha_minus_c():
    with pytest.raises(ValueError):
        find_periodic_prime(2, -1, 1)


def test_find_periodic_prime_exhaustion():
    # x^2 - 2: the orbit of 0 is 2-adic only, and 2 | d, so no prime ever fits
    with pytest.raises(SearchExhaustedError) as ei:
        find_periodic_prime(2, 2, 3, n_search_max=8)
    assert ei.value.scanned == (1, 8)


def test_found_primes_revalidate_from_scratch():
    for d, c, alpha in ((2, -1, 0), (2, 1, 3), (3, -2, 1), (2, Fraction(5, 3), 1)):
        prp = find_periodic_prime(d, Fraction(c), Fraction(alpha))
        p = prp.p
        assert d % p != 0
        assert valuation(Fraction(c), p) >= 0
        assert valuation(Fraction(alpha) + Fraction(c), p) == 0
        cp = Fraction(c).numerator * pow(Fraction(c).denominator, -1, p) % p
        assert period_of_zero_mod(p, d, cp) == prp.n0


# --- root-of-unity rows ------------------------------------------------------


def test_m_formula_spot_values():
    assert [_m_of(N, 2) for N in range(1, 6)] == [1, 1, 1, 2, 2]


def test_verify_root_of_unity_examples():
    row = verify_root_of_unity(7, 2, 1, 3, 4)
    assert row.m_N == 2 and row.ru_check and (7**row.e_N - 1) % 2**row.m_N == 0
    row = verify_root_of_unity(5, 2, -1, 0, 1)
    assert row.m_N == 1 and row.ru_check
    row = verify_root_of_unity(5, 2, -1, 0, 6)
    assert row.m_N == 2 and row.ru_check


def test_verify_root_of_unity_preconditions():
    with pytest.raises(ValueError):
        verify_root_of_unity(5, 2, 2, 1, 3)  # 0 not periodic for x^2-2 mod 5
    with pytest.raises(ValueError):
        verify_root_of_unity(5, 2, 1, 4, 3)  # alpha = -c mod 5
    with pytest.raises(ValueError):
        verify_root_of_unity(5, 10, 1, 3, 2)  # gcd(d, q) != 1


def test_rows_bound_by_multiplicative_order():
    rows = root_of_unity_rows(5, 2, -1 % 5, 0, 10)
    for r in rows:
        assert r.e_N >= mult_order(5, 2**r.m_N)
        assert r.bound == r.e_N


# --- certificates ------------------------------------------------------------


@pytest.fixture(scope="module")
def cert_x2p1():
    prp = find_periodic_prime(2, -1, 0)
    return degree_lower_bound_table(2, -1, 0, [prp], N_max=12)


def test_certificate_rows(cert_x2p1):
    assert [r.e_N for r in cert_x2p1.rows] == [1, 2, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]
    assert all(r.ru_check for r in cert_x2p1.rows)
    assert cert_x2p1.asymptotic.n0 == 3 and cert_x2p1.asymptotic.d == 2
    assert abs(cert_x2p1.asymptotic.growth_base - 2 ** (1 / 3)) < 1e-12


def test_certificate_aggregate_lcm():
    rows_a = PeriodicReductionPrime(p=5, n0=2, found_at_n=2)
    cert = degree_lower_bound_table(2, 1, 3, [rows_a], N_max=6)
    for (N, agg) in cert.aggregate:
        es = [r.e_N for r in cert.rows if r.N == N]
        assert agg == math.lcm(*es)
    # N=1: f - 3 = x^2 - 4 splits mod 5, so e_1 = 1
    assert cert.rows[0].e_N == 1 and cert.rows[0].bound == 1


def test_certificate_roundtrip_and_verify(cert_x2p1):
    text = certificate_to_json(cert_x2p1)
    doc = json.loads(text)
    cert2 = certificate_from_dict(doc)
    assert certificate_to_json(cert2) == text
    rederived = verify_certificate(cert2)
    assert certificate_to_json(rederived) == text


def test_certificate_tamper_detection(cert_x2p1):
    doc = json.loads(certificate_to_json(cert_x2p1))
    doc["rows"][4]["e_N"] *= 2
    with pytest.raises(FalsificationError):
        verify_certificate(certificate_from_dict(doc))
    doc = json.loads(certificate_to_json(cert_x2p1))
    doc["primes"][0]["n0"] = 2
    with pytest.raises(FalsificationError):
        verify_certificate(certificate_from_dict(doc))


def test_degree_cap_truncation():
    prp = PeriodicReductionPrime(p=5, n0=3, found_at_n=3)
    cert = degree_lower_bound_table(2, -1, 0, [prp], N_max=12, degree_cap=256)
    assert cert.truncated_at == 8
    assert max(r.N for r in cert.rows) == 8


# --- split scans -------------------------------------------------------------


@pytest.fixture(scope="module")
def support_x2m1():
    return support_set(X2M1, 3, 8)


def test_split_scan_least_prime(support_x2m1):
    rep = split_scan(X2M1, 3, 2, 1000, support_x2m1)
    assert rep.least_split == 13
    # quadratic-reciprocity cross-check: split iff p = 1 mod 12
    for p in rep.split_primes:
        assert p % 12 == 1
    rep1 = split_scan(X2M1, 3, 1, 20, support_x2m1)
    assert rep1.least_split == 5
    assert set(rep1.split_primes) == {5, 7, 11, 13, 17, 19}


def test_split_scan_respects_exclusions(support_x2m1):
    rep = split_scan(X2M1, 3, 2, 1000, support_x2m1)
    assert not (set(rep.split_primes) & support_x2m1.primes)


def test_split_scan_no_small_split_primes(support_x2m1):
    for N in (1, 2, 3, 4):
        rep = split_scan(X2M1, 3, N, 3000, support_x2m1)
        assert all(p >= 2**N for p in rep.split_primes)


def test_split_scan_empty_result_is_fine(support_x2m1):
    rep = split_scan(X2M1, 3, 4, 13, support_x2m1)  # p_max < d^N forces empty
    assert rep.split_primes == () and rep.least_split is None


# --- serre bound -------------------------------------------------------------


def test_serre_degree_bound_examples():
    assert serre_degree_bound({2, 3}, 0) == 1
    assert serre_degree_bound({2}, math.log(8)) == 2
    # frozen regression: n * (log 6 + 2 log n) >= 100 first holds at n = 15
    assert serre_degree_bound({2, 3}, 100.0) == 15


def test_serre_degree_bound_monotone():
    vals = [serre_degree_bound({2, 3}, x) for x in (0, 1, 5, 20, 100, 500, 10**4)]
    assert vals == sorted(vals)
    # larger primes at fixed #S only weaken (raise c1, shrink n)
    assert serre_degree_bound({101, 103}, 50) <= serre_degree_bound({2, 3}, 50)


def test_serre_degree_bound_rejects():
    with pytest.raises(ValueError):
        serre_degree_bound({2, 3}, -1)
    with pytest.raises(ValueError):
        serre_degree_bound(set(), 5.0)
    with pytest.raises(ValueError):
        serre_degree_bound({4}, 1.0)


# --- growth report -----------------------------------------------------------


def test_grh_growth_report_shape():
    rep = grh_growth_report(X2M1, 3, 3, 500)
    assert rep.label == "EMPIRICAL"
    assert [r.N for r in rep.rows] == [1, 2, 3]
    assert rep.rows[1].least_split_prime == 13
    assert rep.rows[0].log_abs_disc is not None
    # x^2 example: least split prime for x^2 - 2 outside S = {2} is 7
    rep2 = grh_growth_report(PolyQ([0, 0, 1]), 2, 1, 100)
    assert rep2.rows[0].least_split_prime == 7


def test_grh_growth_report_past_cap_drops_disc_column():
    rep = grh_growth_report(X2M1, 3, 4, 200, disc_degree_cap=4)
    assert rep.rows[0].log_abs_disc is not None
    assert rep.rows[3].log_abs_disc is None
    # the split column stays present; an empty scan is acceptable data
    assert rep.rows[1].least_split_prime == 13

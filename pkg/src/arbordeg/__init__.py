"""Desk-scale verification toolkit for iterated-preimage degree bounds.

Library layout:

  exact_arith   integers, rationals, valuations, orders
  poly          PolyQ / PolyFp, resultants, discriminants
  ff_factor     factorization over prime fields, splitting degrees
  dynamics      critical orbits, PCF decision, support sets
  certify       periodic-reduction primes, certificates, scans
  cli           the `arbordeg` command
"""

from .certify import (
    CertificateRow,
    IterateFactorEngine,
    LowerBoundCertificate,
    PeriodicReductionPrime,
    certificate_from_dict,
    certificate_to_dict,
    certificate_to_json,
    degree_lower_bound_table,
    find_periodic_prime,
    grh_growth_report,
    root_of_unity_rows,
    serre_degree_bound,
    split_scan,
    verify_certificate,
    verify_root_of_unity,
)
from .dynamics import (
    CriticalOrbit,
    SupportSet,
    critical_points,
    forward_orbit,
    is_pcf,
    preimage_separability,
    support_set,
    unicritical_period,
)
from .errors import (
    BadReductionError,
    FalsificationError,
    SearchExhaustedError,
    UnsupportedPolynomialError,
    WorkLimitError,
)
from .exact_arith import (
    Factorization,
    OrderConstant,
    PrimePower,
    factor_integer,
    is_prime,
    mult_order,
    order_constant,
    valuation,
)
from .ff_factor import (
    FactorizationFp,
    distinct_degree_factorization,
    equal_degree_factorization,
    factor,
    roots_in_fp,
    splits_completely_distinct,
    splitting_degree,
    squarefree_decomposition,
)
from .poly import (
    PolyFp,
    PolyQ,
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

__version__ = "0.1.0"

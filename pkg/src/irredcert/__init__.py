"""Irreducibility bounds and certificates for elliptic curves over Galois number fields."""

from .bounds import b_of_q, c1, c2, c_K, c_of_n, delta_K, jk_bound, torsion_bound
from .criteria import (
    IrreducibilityCertificate,
    JKSet,
    NoCriterion,
    certify,
    check_class_coverage,
    family_E_membership,
    family_Eprime_membership,
    jk_set,
)
from .ellcurve import (
    PlaceType,
    WeierstrassModel,
    classify_place,
    j_invariant,
    parse_curve,
    supersingular_j,
    trace_of_frobenius,
)
from .exactnum import RealEnclosure, ceil_upper, interval_exp, interval_ln
from .localchar import Case, case_row, candidate_cases, exponent_row, twisted_norm, verify_case_identity
from .numfield import QQ, QuadraticField, invariants, parse_field

__version__ = "0.1.0"

"""Exact-arithmetic lattice computations for hyperkahler-type geometry.

Integral quadratic-form arithmetic (pairing, divisibility, enumeration),
Riemann-Roch polynomials of the K3^[n] and Kum^n deformation families,
prime-exceptional reflections with a terminating cone walk, and a classifier
deciding whether a big-and-nef class carries a base divisor H = m*L + F.
All computation is arbitrary-precision integer / exact rational; there is no
floating point anywhere.
"""

from .classifier import (
    Decomposition,
    NumericalNLType,
    check_2H,
    classification_report,
    classify,
    kumn_case1_solutions,
    kumn_nonexistence_search,
    nl_numerical_types,
    verify_decomposition,
)
from .cones import (
    ContextCheck,
    GeometricContext,
    ReflectionTrace,
    in_bk_closure,
    in_positive_cone,
    k3_ped_candidates,
    ped_inequality_check,
    rank2_exceptional_scan,
    reflect,
    reflect_into_bk,
    run_context_checks,
    validate_context_payload,
)
from .errors import (
    BasedivError,
    CapabilityError,
    ConsistencyError,
    DomainError,
    HypothesisError,
    IntegralityError,
    StructuralError,
)
from .lattice import (
    Lattice,
    Vec,
    direct_sum,
    divisibility,
    enumerate_vectors,
    hyperbolic_plane,
    is_primitive,
    pairing,
    rank_one,
    square,
    vec_add,
    vec_is_zero,
    vec_neg,
    vec_scale,
    vec_sub,
)
from .oracle import oracle_classify, oracle_rr
from .riemann_roch import (
    GENERIC,
    K3N,
    KUMN,
    DeformationType,
    RRPolynomial,
    check_strict_monotonic,
    deformation_from_json_dict,
    invert_binomial,
    make_type,
    rr_eval,
)

__version__ = "0.1.0"

__all__ = [
    "BasedivError",
    "CapabilityError",
    "ConsistencyError",
    "ContextCheck",
    "Decomposition",
    "DeformationType",
    "DomainError",
    "GENERIC",
    "GeometricContext",
    "HypothesisError",
    "IntegralityError",
    "K3N",
    "KUMN",
    "Lattice",
    "NumericalNLType",
    "RRPolynomial",
    "ReflectionTrace",
    "StructuralError",
    "Vec",
    "check_2H",
    "check_strict_monotonic",
    "classification_report",
    "classify",
    "deformation_from_json_dict",
    "direct_sum",
    "divisibility",
    "enumerate_vectors",
    "hyperbolic_plane",
    "in_bk_closure",
    "in_positive_cone",
    "invert_binomial",
    "is_primitive",
    "k3_ped_candidates",
    "kumn_case1_solutions",
    "kumn_nonexistence_search",
    "make_type",
    "nl_numerical_types",
    "oracle_classify",
    "oracle_rr",
    "pairing",
    "ped_inequality_check",
    "rank2_exceptional_scan",
    "rank_one",
    "reflect",
    "reflect_into_bk",
    "rr_eval",
    "run_context_checks",
    "square",
    "validate_context_payload",
    "vec_add",
    "vec_is_zero",
    "vec_neg",
    "vec_scale",
    "vec_sub",
    "verify_decomposition",
]

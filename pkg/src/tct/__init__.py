"""Unary polynomials, minimal sets, traces and types of prime quotients"""

from .lift import default_fill, lift_trace, trace_lift_holds
from .minimal import MinimalSetData, minimal_sets, require_covering, separates, traces_of
from .polynomials import UnaryMap, is_idempotent_map, polynomial_clone_on, unary_polynomials
from .types import (
    TYPE_LABELS,
    TCTType,
    classify_minimal_algebra,
    classify_type,
    induced_algebra,
    prime_quotient_types,
)

__all__ = [
    "MinimalSetData",
    "TCTType",
    "TYPE_LABELS",
    "UnaryMap",
    "classify_minimal_algebra",
    "classify_type",
    "default_fill",
    "induced_algebra",
    "is_idempotent_map",
    "lift_trace",
    "minimal_sets",
    "polynomial_clone_on",
    "prime_quotient_types",
    "require_covering",
    "separates",
    "trace_lift_holds",
    "traces_of",
    "unary_polynomials",
]

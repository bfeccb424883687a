"""The construction over a sorted homomorphism and its star maps"""

from .constructed import (
    DIAGONAL,
    ConstructedAlgebra,
    HatInfo,
    construct_c,
    constructed_signature,
    hat_symbol,
    parse_hat_symbol,
)
from .files import SIDECAR_SUFFIX, load_constructed, sidecar_path, write_constructed
from .identities import IdentityViolation, check_dalg_identities, find_identity_violation
from .polynomial import (
    column_polynomial_maps,
    constant_expanded_sorted_hom,
    constant_expansion,
    polynomial_correspondence,
)
from .star import (
    sort_rows,
    star_automorphisms,
    star_congruence,
    star_endomorphism,
    star_relation,
    star_subuniverse,
    tilde_map,
    unstar_congruence,
)
from .terms import coordinate_terms, lift_idempotent, lift_term, unit_assignment

__all__ = [
    "DIAGONAL",
    "SIDECAR_SUFFIX",
    "ConstructedAlgebra",
    "HatInfo",
    "IdentityViolation",
    "check_dalg_identities",
    "column_polynomial_maps",
    "constant_expanded_sorted_hom",
    "constant_expansion",
    "construct_c",
    "constructed_signature",
    "coordinate_terms",
    "find_identity_violation",
    "hat_symbol",
    "lift_idempotent",
    "lift_term",
    "load_constructed",
    "parse_hat_symbol",
    "polynomial_correspondence",
    "sidecar_path",
    "sort_rows",
    "star_automorphisms",
    "star_congruence",
    "star_endomorphism",
    "star_relation",
    "star_subuniverse",
    "tilde_map",
    "unit_assignment",
    "unstar_congruence",
    "write_constructed",
]

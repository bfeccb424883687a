"""Subpower membership: oracle, coherence checks and reduction"""

from .coherence import (
    CENTRAL,
    COHERENT,
    CoherenceReport,
    ConditionResult,
    check_d_central,
    check_d_coherent,
)
from .hypothesis import HypothesisEntry, HypothesisReport, check_hypothesis_snilp_centralizers
from .instance import SMPInstance, dump_instance, instance_from_dict, load_instance
from .kstar import SimilarityClass, build_k_star, class_summary
from .oracle import smp_oracle
from .profile import SIProfile, si_profile
from .reduction import (
    PADDING_CELLS,
    ReductionResult,
    padding_elements,
    reduce_instance,
    transfer_instance,
)

__all__ = [
    "CENTRAL",
    "COHERENT",
    "PADDING_CELLS",
    "CoherenceReport",
    "ConditionResult",
    "HypothesisEntry",
    "HypothesisReport",
    "ReductionResult",
    "SIProfile",
    "SMPInstance",
    "SimilarityClass",
    "build_k_star",
    "check_d_central",
    "check_d_coherent",
    "check_hypothesis_snilp_centralizers",
    "class_summary",
    "dump_instance",
    "instance_from_dict",
    "load_instance",
    "padding_elements",
    "reduce_instance",
    "si_profile",
    "smp_oracle",
    "transfer_instance",
]

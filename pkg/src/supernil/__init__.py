"""Supernilpotence decisions and Maltsev term search"""

from .decide import (
    ASSERTED,
    CHECKED,
    UNVERIFIED,
    CrossCheckRecord,
    SupernilCertificate,
    cross_check_via_c,
    decide_supernilpotent,
    omits_type1_locally,
)
from .maltsev import has_maltsev_term, is_maltsev_operation

__all__ = [
    "ASSERTED",
    "CHECKED",
    "UNVERIFIED",
    "CrossCheckRecord",
    "SupernilCertificate",
    "cross_check_via_c",
    "decide_supernilpotent",
    "has_maltsev_term",
    "is_maltsev_operation",
    "omits_type1_locally",
]

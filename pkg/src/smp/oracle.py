"""Exact subpower membership by closure"""

from typing import Optional

from ..config.models import Limits
from ..core.closure import closure_contains
from ..utils.logging import computation_context, get_logger
from .instance import SMPInstance

logger = get_logger(__name__)


def smp_oracle(inst: SMPInstance, cap: Optional[int] = None,
               limits: Optional[Limits] = None) -> bool:
    """Whether the target lies in the subalgebra generated by the generators"""
    if inst.target in inst.generators:
        return True
    with computation_context("smp_oracle", n=inst.n, k=inst.k):
        answer = closure_contains(list(inst.components), inst.generators, inst.target, cap,
                                  limits=limits)
    logger.debug("smp answer", n=inst.n, k=inst.k, answer=answer)
    return answer

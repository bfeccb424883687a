"""Carrying minimal sets and traces into the constructed algebra"""

from typing import FrozenSet, Optional, Sequence, Tuple

from ..config.models import Limits
from ..congruence.partition import Partition
from ..construct.constructed import ConstructedAlgebra
from ..construct.star import star_congruence
from ..utils.errors import ValidationError
from ..utils.logging import get_logger
from .minimal import MinimalSetData, minimal_sets

logger = get_logger(__name__)


def default_fill(c: ConstructedAlgebra) -> Tuple[int, ...]:
    return tuple(elements[0] for elements in c.sort_elements)


def _pad(c: ConstructedAlgebra, values: FrozenSet[int], sort: int,
         fill: Sequence[int]) -> FrozenSet[int]:
    codes = set()
    for a in values:
        column = list(fill)
        column[sort] = a
        codes.add(c.encode(column))
    return frozenset(codes)


def lift_trace(
    c: ConstructedAlgebra,
    minimal: MinimalSetData,
    trace: FrozenSet[int],
    fill: Optional[Sequence[int]] = None,
) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Images of a trace N and its minimal set U: N x {fill} and (U meet D^(i)) x {fill}.

    N must lie in one sort i; fill supplies the other entries of each column.
    """
    fill = tuple(fill) if fill is not None else default_fill(c)
    if trace not in minimal.traces:
        raise ValidationError("The trace does not belong to the minimal set")
    sorts = {c.chi(a) for a in trace}
    if len(sorts) != 1:
        raise ValidationError(f"Trace {sorted(trace)} meets more than one sort")
    (i,) = sorts
    if len(fill) != c.m or any(c.chi(a) != s for s, a in enumerate(fill) if s != i):
        raise ValidationError(f"Fill {list(fill)} does not pick one element per sort")
    fill = tuple(fill[s] if s != i else c.sort_elements[i][0] for s in range(c.m))
    in_sort = frozenset(a for a in minimal.universe if c.chi(a) == i)
    return _pad(c, trace, i, fill), _pad(c, in_sort, i, fill)


def trace_lift_holds(
    c: ConstructedAlgebra,
    delta: Partition,
    theta: Partition,
    fill: Optional[Sequence[int]] = None,
    limits: Optional[Limits] = None,
) -> bool:
    """Every lifted (delta, theta)-trace is a trace of a lifted minimal set of the construction"""
    delta_star, theta_star = star_congruence(delta, c), star_congruence(theta, c)
    targets = {
        data.universe: set(data.traces)
        for data in minimal_sets(c.algebra, delta_star, theta_star, limits)
    }
    for data in minimal_sets(c.base, delta, theta, limits):
        for trace in data.traces:
            lifted_trace, lifted_set = lift_trace(c, data, trace, fill)
            if lifted_set not in targets or lifted_trace not in targets[lifted_set]:
                logger.info("trace lift failed", trace=sorted(trace),
                            minimal_set=sorted(data.universe))
                return False
    return True

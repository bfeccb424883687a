"""Minimal sets and traces of prime quotients"""

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from ..config.models import Limits
from ..congruence.lattice import con_lattice, covers
from ..congruence.partition import Partition
from ..core.algebra import FiniteAlgebra
from ..utils.errors import ValidationError
from ..utils.logging import get_logger
from .polynomials import UnaryMap, is_idempotent_map, unary_polynomials

logger = get_logger(__name__)


@dataclass(frozen=True)
class MinimalSetData:
    """A minimal set U = e(A) with its traces"""
    idempotent: UnaryMap
    universe: FrozenSet[int]
    traces: Tuple[FrozenSet[int], ...]

    def to_dict(self) -> dict:
        return {
            "idempotent": list(self.idempotent),
            "universe": sorted(self.universe),
            "traces": [sorted(t) for t in self.traces],
        }


def separates(subset: FrozenSet[int], delta: Partition, theta: Partition) -> bool:
    """Whether delta and theta differ on the subset"""
    items = sorted(subset)
    return any(
        theta.related(a, b) and not delta.related(a, b)
        for i, a in enumerate(items) for b in items[i + 1:]
    )


def require_covering(alg: FiniteAlgebra, delta: Partition, theta: Partition,
                     limits: Optional[Limits] = None) -> None:
    lattice = con_lattice(alg, limits)
    if delta not in lattice or theta not in lattice:
        raise ValidationError("Both partitions must be congruences",
                              {"delta": str(delta), "theta": str(theta)})
    if not covers(lattice, delta, theta):
        raise ValidationError(f"{theta} does not cover {delta}",
                              {"delta": str(delta), "theta": str(theta)})


def traces_of(universe: FrozenSet[int], delta: Partition, theta: Partition
              ) -> Tuple[FrozenSet[int], ...]:
    """Intersections of U with theta-classes on which delta and theta differ"""
    result = []
    for block in theta.blocks():
        part = universe & frozenset(block)
        if separates(part, delta, theta):
            result.append(part)
    return tuple(result)


def minimal_sets(
    alg: FiniteAlgebra,
    delta: Partition,
    theta: Partition,
    limits: Optional[Limits] = None,
) -> List[MinimalSetData]:
    """The (delta, theta)-minimal sets, ordered by elements.

    Minimal sets are images of idempotent unary polynomials, so only those
    images are enumerated.
    """
    require_covering(alg, delta, theta, limits)
    images = {}
    for e in unary_polynomials(alg, limits):
        if not is_idempotent_map(e):
            continue
        universe = frozenset(e)
        if universe not in images and separates(universe, delta, theta):
            images[universe] = e
    minimal = [
        u for u in images if not any(v < u for v in images)
    ]
    result = [
        MinimalSetData(images[u], u, traces_of(u, delta, theta))
        for u in sorted(minimal, key=lambda u: (len(u), sorted(u)))
    ]
    logger.debug("minimal sets", algebra=alg.name, count=len(result))
    return result

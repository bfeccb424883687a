"""Polynomial operations restricted to finite sets of points"""

from typing import List, Optional, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..core.algebra import FiniteAlgebra
from ..core.closure import TupleSet, generate_subuniverse
from ..utils.errors import CapExceededError, ValidationError
from ..utils.logging import get_logger

logger = get_logger(__name__)

UnaryMap = Tuple[int, ...]


def polynomial_clone_on(
    alg: FiniteAlgebra,
    points: np.ndarray,
    limits: Optional[Limits] = None,
) -> TupleSet:
    """Restrictions of the r-ary polynomials of alg to the given points.

    points has shape (N, r); the result lives in A^N and is generated by the
    r coordinate projections and the N-tuples that are constant.
    """
    limits = limits or DEFAULT_LIMITS
    points = np.asarray(points, dtype=np.int64)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValidationError("Points must be a nonempty (N x r) array")
    if points.size and (points.min() < 0 or points.max() >= alg.size):
        raise ValidationError("Points outside the universe")
    count = points.shape[0]
    generators = [tuple(int(v) for v in points[:, q]) for q in range(points.shape[1])]
    generators += [(a,) * count for a in alg.elements]
    return generate_subuniverse([alg] * count, generators, limits=limits)


def unary_polynomials(alg: FiniteAlgebra, limits: Optional[Limits] = None) -> List[UnaryMap]:
    """Every unary polynomial operation as a tuple of values, in lexicographic order"""
    limits = limits or DEFAULT_LIMITS
    if alg.size > limits.polynomial_size_cap:
        raise CapExceededError(
            f"Unary polynomials of an algebra of size {alg.size} exceed the size cap "
            f"{limits.polynomial_size_cap}",
            {"size": alg.size, "polynomial_size_cap": limits.polynomial_size_cap},
        )
    maps = polynomial_clone_on(alg, np.arange(alg.size)[:, None], limits)
    result = sorted(maps)
    logger.debug("unary polynomials", algebra=alg.name, count=len(result))
    return result


def is_idempotent_map(e: UnaryMap) -> bool:
    return all(e[e[x]] == e[x] for x in range(len(e)))

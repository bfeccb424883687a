"""Maltsev term search in the clone of ternary term operations"""

import itertools
from typing import Optional

import numpy as np

from ..config.models import Limits
from ..core.algebra import FiniteAlgebra
from ..core.closure import close, derivation_terms
from ..core.terms import Term, format_term, term_operation
from ..utils.errors import ConsistencyError
from ..utils.logging import computation_context, get_logger

logger = get_logger(__name__)


def is_maltsev_operation(table: np.ndarray, n: int) -> bool:
    """t(x, x, y) = y and t(x, y, y) = x for a flat ternary table"""
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    view = np.asarray(table).reshape(n, n, n)
    return bool((view[x, x, y] == y).all() and (view[x, y, y] == x).all())


def has_maltsev_term(alg: FiniteAlgebra, limits: Optional[Limits] = None) -> Optional[Term]:
    """A ternary Maltsev term, or None if the term clone has no Maltsev operation.

    The ternary term operations are the subuniverse of A^(A^3) generated by
    the three projections; the closure stops at the first Maltsev operation
    and the term is read off its derivation.

    Raises:
        CapExceededError: If the clone outgrows the closure cap; the answer is
            then unknown
    """
    n = alg.size
    points = np.array(list(itertools.product(range(n), repeat=3)), dtype=np.int64)
    projections = [tuple(int(v) for v in points[:, q]) for q in range(3)]
    pairs = np.array(list(itertools.product(range(n), repeat=2)), dtype=np.int64)
    xxy = pairs[:, 0] * n * n + pairs[:, 0] * n + pairs[:, 1]
    xyy = pairs[:, 0] * n * n + pairs[:, 1] * n + pairs[:, 1]

    def maltsev(rows: np.ndarray) -> np.ndarray:
        return ((rows[:, xxy] == pairs[None, :, 1]).all(axis=1)
                & (rows[:, xyy] == pairs[None, :, 0]).all(axis=1))

    with computation_context("maltsev", algebra=alg.name, size=n):
        run = close([alg] * points.shape[0], projections, limits=limits, track=True,
                    stop=maltsev)
    if run.hit is None:
        logger.debug("no maltsev term", algebra=alg.name, clone=len(run.members))
        return None
    term = derivation_terms(run)(run.hit)
    if not is_maltsev_operation(term_operation(alg, term, 3), n):
        raise ConsistencyError(
            f"Derived term {format_term(term)} is not a Maltsev term",
            {"algebra": alg.name},
        )
    logger.debug("maltsev term", algebra=alg.name, term=format_term(term))
    return term

"""Constant expansions and the unary polynomials of the constructed algebra"""

from typing import FrozenSet, Optional, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..core.algebra import FiniteAlgebra, Operation
from ..core.homomorphism import SortedHom
from ..tct.polynomials import polynomial_clone_on, unary_polynomials
from ..utils.errors import CapExceededError
from ..utils.logging import get_logger
from .constructed import ConstructedAlgebra

logger = get_logger(__name__)


def constant_symbol(a: int) -> str:
    return f"c<{a}>"


def constant_expansion(alg: FiniteAlgebra) -> FiniteAlgebra:
    """alg with a unary constant operation c<a> for every element a"""
    constants = [
        Operation(constant_symbol(a), 1, np.full(alg.size, a, dtype=np.int64))
        for a in alg.elements
    ]
    return FiniteAlgebra(alg.size, list(alg.operations) + constants, name=f"{alg.name}+c")


def constant_expanded_sorted_hom(chi: SortedHom) -> SortedHom:
    """chi on the constant expansion; the index algebra reads c<a> as chi(a)"""
    return SortedHom.from_labels(constant_expansion(chi.domain), chi.labels)


def column_polynomial_maps(c: ConstructedAlgebra, limits: Optional[Limits] = None
                           ) -> FrozenSet[Tuple[int, ...]]:
    """Self-maps of the carrier x -> (p^(0)(x), ..., p^(m-1)(x)).

    Each p^(i) ranges over the m-ary polynomials of the base algebra that
    send every column into D^(i).
    """
    limits = limits or DEFAULT_LIMITS
    columns = c.columns()
    rows = polynomial_clone_on(c.base, columns, limits).rows()
    per_sort = []
    for i, elements in enumerate(c.sort_elements):
        inside = rows[np.isin(rows, elements).all(axis=1)]
        per_sort.append(c.positions[inside] * int(c.weights[i]))
    count = int(np.prod([block.shape[0] for block in per_sort], dtype=object))
    if count * c.size > limits.closure_cap:
        raise CapExceededError(
            f"{count} combinations of coordinate polynomials exceed the closure cap",
            {"cap": limits.closure_cap},
        )
    maps = np.zeros((1, c.size), dtype=np.int64)
    for block in per_sort:
        maps = (maps[:, None, :] + block[None, :, :]).reshape(-1, c.size)
    result = frozenset(tuple(int(v) for v in row) for row in np.unique(maps, axis=0))
    logger.debug("column polynomial maps", algebra=c.algebra.name, count=len(result))
    return result


def polynomial_correspondence(c: ConstructedAlgebra, limits: Optional[Limits] = None) -> bool:
    """Whether the unary polynomials of the construction are exactly the column maps"""
    expected = column_polynomial_maps(c, limits)
    actual = frozenset(unary_polynomials(c.algebra, limits))
    if expected != actual:
        logger.info(
            "polynomial correspondence failed",
            algebra=c.algebra.name,
            missing=len(expected - actual),
            extra=len(actual - expected),
        )
    return expected == actual

"""Higher commutators, centralizers and nilpotence"""

from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..congruence.lattice import cg, con_lattice, require_congruence
from ..congruence.partition import Partition
from ..core.algebra import FiniteAlgebra
from ..utils.errors import ConsistencyError
from ..utils.logging import get_logger
from .matrix import check_dimension, matrix_algebra

logger = get_logger(__name__)


def higher_commutator(
    alg: FiniteAlgebra,
    betas: Sequence[Partition],
    limits: Optional[Limits] = None,
) -> Partition:
    """[beta_1, ..., beta_k]: least gamma satisfying the matrix condition.

    Cube coordinates are listed so that (eps0, eps1) are adjacent columns. A
    labeling whose first 2^(k-1) - 1 column pairs are gamma-related forces its
    last pair into gamma. Pairs are collected per pass over the matrix algebra
    and gamma is regenerated once per pass.
    """
    limits = limits or DEFAULT_LIMITS
    betas = list(betas)
    check_dimension(alg, len(betas), limits)
    for beta in betas:
        require_congruence(alg, beta)
    if betas[-1].is_identity:
        return Partition.identity(alg.size)
    return _fixpoint(alg, tuple(betas), limits)


@lru_cache(maxsize=1024)
def _fixpoint(alg: FiniteAlgebra, betas: Tuple[Partition, ...], limits: Limits) -> Partition:
    rows = matrix_algebra(alg, betas, limits, validate=False).rows()
    left, right = rows[:, 0:-2:2], rows[:, 1:-2:2]
    gamma = Partition.identity(alg.size)
    rounds = 0
    while True:
        rounds += 1
        labels = np.asarray(gamma.labels, dtype=np.int64)
        hypothesis = (labels[left] == labels[right]).all(axis=1)
        forced = rows[hypothesis][:, -2:]
        forced = forced[labels[forced[:, 0]] != labels[forced[:, 1]]]
        if forced.shape[0] == 0:
            break
        pairs = gamma.generating_pairs() + [tuple(p) for p in np.unique(forced, axis=0).tolist()]
        gamma = cg(alg, pairs)
    logger.debug("higher commutator", k=len(betas), rounds=rounds, result=str(gamma))
    return gamma


def commutator(
    alg: FiniteAlgebra,
    alpha: Partition,
    beta: Partition,
    limits: Optional[Limits] = None,
) -> Partition:
    """Binary commutator [alpha, beta]"""
    return higher_commutator(alg, [alpha, beta], limits)


def centralizer(
    alg: FiniteAlgebra,
    beta: Partition,
    limits: Optional[Limits] = None,
) -> Partition:
    """(0 : beta), the largest rho with [rho, beta] = 0"""
    require_congruence(alg, beta)
    result = Partition.identity(alg.size)
    for rho in con_lattice(alg, limits):
        if rho.leq(result):
            continue
        if higher_commutator(alg, [rho, beta], limits).is_identity:
            result = result.join(rho)
    if not higher_commutator(alg, [result, beta], limits).is_identity:
        raise ConsistencyError(
            "The join of the centralizing congruences does not centralize",
            {"beta": str(beta), "join": str(result), "algebra": alg.name},
        )
    return result


def is_abelian(alg: FiniteAlgebra, alpha: Optional[Partition] = None,
               limits: Optional[Limits] = None) -> bool:
    """Whether [alpha, alpha] = 0 (alpha defaults to the total congruence)"""
    alpha = alpha or Partition.total(alg.size)
    return higher_commutator(alg, [alpha, alpha], limits).is_identity


def is_nilpotent(
    alg: FiniteAlgebra,
    alpha: Partition,
    limits: Optional[Limits] = None,
) -> Tuple[bool, List[Partition]]:
    """Lower central series alpha, [alpha, alpha], [alpha, [alpha, alpha]], ...

    Returns whether it reaches 0, with the series up to 0 or up to the first
    repeated term.
    """
    require_congruence(alg, alpha)
    series = [alpha]
    gamma = alpha
    while not gamma.is_identity:
        following = higher_commutator(alg, [alpha, gamma], limits)
        if following == gamma:
            logger.debug("lower central series stalls", series=[str(p) for p in series])
            return False, series
        series.append(following)
        gamma = following
    return True, series


def is_k_supernilpotent(
    alg: FiniteAlgebra,
    alpha: Partition,
    k: int,
    limits: Optional[Limits] = None,
) -> bool:
    """Whether the (k+1)-ary commutator [alpha, ..., alpha] vanishes"""
    require_congruence(alg, alpha)
    if alpha.is_identity:
        return True
    return higher_commutator(alg, [alpha] * (k + 1), limits).is_identity

"""Cube labelings and (beta_1,...,beta_k)-matrix algebras"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..config.models import DEFAULT_LIMITS, Limits
from ..congruence.lattice import require_congruence
from ..congruence.partition import Partition
from ..core.algebra import FiniteAlgebra
from ..core.closure import TupleSet, generate_subuniverse
from ..utils.errors import CapExceededError, ValidationError
from ..utils.logging import get_logger

logger = get_logger(__name__)


def cube_bit(k: int, j: int, eps: int) -> int:
    """Coordinate j (1-based, 1 most significant) of a vertex of {0,1}^k"""
    return (eps >> (k - j)) & 1


@dataclass(frozen=True)
class CubeLabeling:
    """Labeling of {0,1}^k by elements; values[eps] with coordinate 1 as the top bit"""
    k: int
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValidationError("Cube dimension must be positive")
        if len(self.values) != 1 << self.k:
            raise ValidationError(
                f"A {self.k}-cube labeling needs {1 << self.k} values, got {len(self.values)}"
            )

    def within(self, size: int) -> bool:
        return all(0 <= v < size for v in self.values)


def face_labeling(k: int, j: int, a0: int, a1: int) -> CubeLabeling:
    """g_j[a0, a1]: constant a_u on the face where coordinate j equals u"""
    if not 1 <= j <= k:
        raise ValidationError(f"Face index {j} outside 1..{k}")
    return CubeLabeling(k, tuple(a1 if cube_bit(k, j, eps) else a0 for eps in range(1 << k)))


def check_dimension(alg: FiniteAlgebra, k: int, limits: Optional[Limits] = None) -> None:
    """Raise CapExceededError if A^(2^k) is beyond the configured guardrails"""
    limits = limits or DEFAULT_LIMITS
    if k < 1:
        raise ValidationError("A commutator needs at least one congruence")
    allowed = limits.max_commutator_arity
    if alg.size <= 2:
        allowed += 1
    if k > allowed:
        raise CapExceededError(
            f"Commutator of {k} congruences on an algebra of size {alg.size} exceeds "
            f"the maximal dimension {allowed}",
            {"k": k, "size": alg.size, "max_commutator_arity": limits.max_commutator_arity},
        )
    carriers = alg.size ** (1 << k)
    if carriers > limits.closure_cap:
        raise CapExceededError(
            f"A^(2^{k}) has {carriers} elements, above the closure cap {limits.closure_cap}",
            {"k": k, "size": alg.size, "closure_cap": limits.closure_cap},
        )


def matrix_generators(alg: FiniteAlgebra, betas: Sequence[Partition]) -> List[Tuple[int, ...]]:
    """Standard generating set: g_j[a0, a1] for every j and every a0 beta_j a1"""
    k = len(betas)
    gens = []
    for j, beta in enumerate(betas, start=1):
        for a0, a1 in sorted(beta.pairs()):
            gens.append(face_labeling(k, j, a0, a1).values)
    return gens


def matrix_algebra(
    alg: FiniteAlgebra,
    betas: Sequence[Partition],
    limits: Optional[Limits] = None,
    validate: bool = True,
) -> TupleSet:
    """Subuniverse of A^(2^k) generated by the face labelings of the betas"""
    limits = limits or DEFAULT_LIMITS
    check_dimension(alg, len(betas), limits)
    if validate:
        for beta in betas:
            require_congruence(alg, beta)
    components = [alg] * (1 << len(betas))
    matrix = generate_subuniverse(components, matrix_generators(alg, betas), limits=limits)
    logger.debug("matrix algebra", k=len(betas), size=len(matrix))
    return matrix

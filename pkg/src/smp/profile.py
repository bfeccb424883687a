"""Monolith data of subdirectly irreducible algebras"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Optional

from sympy import factorint

from ..commutator.commutator import centralizer, is_abelian
from ..config.models import DEFAULT_LIMITS, Limits
from ..congruence.lattice import monolith
from ..congruence.partition import Partition
from ..core.algebra import FiniteAlgebra
from ..core.homomorphism import SortedHom, quotient
from ..tct.types import classify_type
from ..utils.errors import CapExceededError, ConsistencyError
from ..utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SIProfile:
    """Monolith mu, its centralizer rho = (0:mu), and A/rho with the natural map"""
    algebra: FiniteAlgebra
    monolith: Partition
    centralizer: Partition
    abelian: bool
    reference: FiniteAlgebra
    natural: SortedHom
    characteristic: Optional[int]

    @property
    def central(self) -> bool:
        return self.centralizer.is_total

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra.name,
            "monolith": str(self.monolith),
            "centralizer": str(self.centralizer),
            "abelian_monolith": self.abelian,
            "central_monolith": self.central,
            "reference_size": self.reference.size,
            "characteristic": self.characteristic,
        }


def _characteristic(alg: FiniteAlgebra, mu: Partition, limits: Limits) -> int:
    """Characteristic of the prime quotient (0, mu) of an abelian monolith"""
    identity = Partition.identity(alg.size)
    try:
        found = classify_type(alg, identity, mu, limits)
    except CapExceededError:
        # blocks of an abelian monolith have size a power of the characteristic
        primes = set()
        for block in mu.blocks():
            if len(block) > 1:
                primes.update(factorint(len(block)))
        if len(primes) != 1:
            raise ConsistencyError(
                f"Blocks of the abelian monolith {mu} are not powers of a single prime",
                {"algebra": alg.name},
            ) from None
        logger.debug("characteristic from monolith blocks", algebra=alg.name)
        return int(next(iter(primes)))
    if found.type != 2 or found.characteristic is None:
        raise ConsistencyError(
            f"Abelian monolith of {alg.name} has type {found.type}",
            {"algebra": alg.name, "monolith": str(mu)},
        )
    return found.characteristic


@lru_cache(maxsize=512)
def _profile(alg: FiniteAlgebra, limits: Limits) -> Optional[SIProfile]:
    mu = monolith(alg, limits)
    if mu is None:
        return None
    rho = centralizer(alg, mu, limits)
    abelian = is_abelian(alg, mu, limits)
    reference, natural = quotient(alg, rho)
    characteristic = _characteristic(alg, mu, limits) if abelian else None
    return SIProfile(alg, mu, rho, abelian, reference, natural, characteristic)


def si_profile(alg: FiniteAlgebra, limits: Optional[Limits] = None) -> Optional[SIProfile]:
    """Profile of a subdirectly irreducible algebra, None otherwise"""
    return _profile(alg, limits or DEFAULT_LIMITS)

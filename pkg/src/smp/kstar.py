"""Similarity classes of subdirectly irreducible algebras and their constructed algebras"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config.models import DEFAULT_LIMITS, Limits
from ..construct.constructed import ConstructedAlgebra, construct_c
from ..core.algebra import FiniteAlgebra
from ..core.homomorphism import SortedHom, are_isomorphic, hs_closure, iter_isomorphisms
from ..utils.errors import ConsistencyError
from ..utils.logging import computation_context, get_logger
from .profile import SIProfile, si_profile

logger = get_logger(__name__)


@dataclass
class SimilarityClass:
    """SI algebras with abelian monolith sharing S/(0:mu) up to isomorphism and characteristic.

    ``reference`` is the fixed index algebra I; ``constructed`` holds one
    constructed algebra per isomorphism type over all members and all
    surjections onto I with kernel (0:mu).
    """
    index: int
    reference: FiniteAlgebra
    characteristic: int
    members: List[FiniteAlgebra] = field(default_factory=list)
    constructed: List[ConstructedAlgebra] = field(default_factory=list)

    @property
    def name(self) -> str:
        return f"I{self.index}"

    def covers(self, alg: FiniteAlgebra) -> bool:
        return any(alg.size == s.size and are_isomorphic(alg, s) for s in self.members)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "reference": self.name,
            "reference_size": self.reference.size,
            "characteristic": self.characteristic,
            "members": [alg.name for alg in self.members],
            "constructed": [
                {"base": c.base.name, "chi": list(c.chi.labels), "size": c.size}
                for c in self.constructed
            ],
        }


def _surjections(profile: SIProfile, reference: FiniteAlgebra) -> List[SortedHom]:
    """Every surjection onto reference with kernel (0:mu), as isomorphism o natural map"""
    result = []
    for phi in iter_isomorphisms(profile.reference, reference):
        labels = [phi[profile.natural(a)] for a in profile.algebra.elements]
        result.append(SortedHom(profile.algebra, reference, labels))
    return result


def _group(profiles: Sequence[SIProfile]) -> List[SimilarityClass]:
    classes: List[SimilarityClass] = []
    for profile in profiles:
        assert profile.characteristic is not None
        for cls in classes:
            if (cls.characteristic == profile.characteristic
                    and cls.reference.size == profile.reference.size
                    and are_isomorphic(profile.reference, cls.reference)):
                cls.members.append(profile.algebra)
                break
        else:
            reference = profile.reference.renamed(f"I{len(classes)}")
            classes.append(SimilarityClass(len(classes), reference, profile.characteristic,
                                           [profile.algebra]))
    return classes


def _verify(cls: SimilarityClass, c: ConstructedAlgebra, limits: Limits) -> None:
    profile = si_profile(c.algebra, limits)
    if profile is None or not profile.central:
        raise ConsistencyError(
            f"Constructed algebra over {c.base.name} is not SI with central monolith",
            {"class": cls.index, "chi": list(c.chi.labels)},
        )
    if profile.characteristic != cls.characteristic:
        raise ConsistencyError(
            f"Constructed algebra over {c.base.name} has characteristic "
            f"{profile.characteristic}, class {cls.index} has {cls.characteristic}",
            {"class": cls.index},
        )


def build_k_star(
    ks: Sequence[FiniteAlgebra],
    cap: Optional[int] = None,
    limits: Optional[Limits] = None,
) -> List[SimilarityClass]:
    """Group HS(ks) into similarity classes and construct their algebras.

    Only subdirectly irreducible members with an abelian monolith are kept.
    Every constructed algebra is checked to be subdirectly irreducible with a
    central monolith of the class characteristic.

    Raises:
        CapExceededError: If the HS-closure or a construction exceeds its cap
        ConsistencyError: If a constructed algebra fails the check
    """
    limits = limits or DEFAULT_LIMITS
    with computation_context("build_k_star", inputs=len(ks)):
        members = hs_closure(ks, cap, limits)
        with ThreadPoolExecutor(max_workers=limits.threads) as executor:
            found = list(executor.map(lambda alg: si_profile(alg, limits), members))
        profiles = [p for p in found if p is not None and p.abelian]
        classes = _group(profiles)

        by_algebra: Dict[int, SIProfile] = {id(p.algebra): p for p in profiles}
        for cls in classes:
            for alg in cls.members:
                for chi in _surjections(by_algebra[id(alg)], cls.reference):
                    c = construct_c(alg, chi, limits)
                    if any(c.size == other.size and are_isomorphic(c.algebra, other.algebra)
                           for other in cls.constructed):
                        continue
                    _verify(cls, c, limits)
                    cls.constructed.append(c)
            logger.debug("similarity class", index=cls.index, members=len(cls.members),
                         constructed=len(cls.constructed), characteristic=cls.characteristic)
    return classes


def class_summary(classes: Sequence[SimilarityClass]) -> List[Tuple[str, int, int, int]]:
    """(name, characteristic, members, constructed) per class"""
    return [(cls.name, cls.characteristic, len(cls.members), len(cls.constructed))
            for cls in classes]

"""Supernilpotence of monolith centralizers across HS(K)"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ..commutator.commutator import is_abelian
from ..config.models import DEFAULT_LIMITS, Limits
from ..core.algebra import FiniteAlgebra
from ..core.homomorphism import hs_closure
from ..supernil.decide import SupernilCertificate, decide_supernilpotent
from ..utils.logging import computation_context, get_logger
from .profile import si_profile

logger = get_logger(__name__)


@dataclass
class HypothesisEntry:
    algebra: FiniteAlgebra
    certificate: SupernilCertificate
    abelian_centralizer: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra.name,
            "size": self.algebra.size,
            "centralizer": str(self.certificate.alpha),
            "supernilpotent": self.certificate.verdict,
            "abelian_centralizer": self.abelian_centralizer,
            "certificate": self.certificate.to_dict(),
        }


@dataclass
class HypothesisReport:
    """Whether (0:mu) is supernilpotent for every SI member with abelian monolith.

    Holds vacuously when there is no such member. ``residually_small`` lists
    the members whose monolith centralizer is abelian, for information.
    """
    entries: List[HypothesisEntry] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(e.certificate.verdict for e in self.entries)

    @property
    def residually_small(self) -> List[str]:
        return [e.algebra.name for e in self.entries if e.abelian_centralizer]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "entries": [e.to_dict() for e in self.entries],
            "residually_small": self.residually_small,
        }


def check_hypothesis_snilp_centralizers(
    ks: Sequence[FiniteAlgebra],
    assert_omits_type1: bool = False,
    cap: Optional[int] = None,
    limits: Optional[Limits] = None,
) -> HypothesisReport:
    """Decide supernilpotence of (0:mu) on every SI member of HS(ks) with abelian monolith

    Raises:
        CapExceededError: If a closure or the decision exceeds its cap
        HypothesisError: If a member's decision is refused
    """
    limits = limits or DEFAULT_LIMITS
    report = HypothesisReport()
    with computation_context("check_hypothesis", inputs=len(ks)):
        for alg in hs_closure(ks, cap, limits):
            profile = si_profile(alg, limits)
            if profile is None or not profile.abelian:
                continue
            certificate = decide_supernilpotent(alg, profile.centralizer, assert_omits_type1,
                                                limits)
            report.entries.append(HypothesisEntry(
                alg, certificate, is_abelian(alg, profile.centralizer, limits)))
    logger.info("hypothesis checked", holds=report.holds, members=len(report.entries))
    return report

"""Coherence and centrality conditions on subpower membership inputs.

Both checks report per condition and never raise on a failed condition.
"""

import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..core.closure import generate_subuniverse
from ..core.homomorphism import are_isomorphic, is_homomorphism
from ..utils.errors import AlgebraError
from ..utils.logging import computation_context, get_logger
from .instance import SMPInstance
from .profile import SIProfile, si_profile

logger = get_logger(__name__)

COHERENT = "coherent"
CENTRAL = "central"


@dataclass
class ConditionResult:
    name: str
    passed: bool
    message: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"condition": self.name, "passed": self.passed, "message": self.message,
                **({"details": self.details} if self.details else {})}


@dataclass
class CoherenceReport:
    """Per-condition outcome; iota[j] maps A_j/rho_j onto A_0/rho_0 when (iv) holds"""
    kind: str
    d: int
    conditions: List[ConditionResult] = field(default_factory=list)
    profiles: List[Optional[SIProfile]] = field(default_factory=list)
    iota: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, name: str) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "d": self.d,
            "passed": self.passed,
            "conditions": [c.to_dict() for c in self.conditions],
        }


def _check_size(inst: SMPInstance, d: int) -> ConditionResult:
    bound = max(d, 3)
    if inst.n >= bound:
        return ConditionResult("i", True)
    return ConditionResult("i", False, f"n = {inst.n} is below max(d, 3) = {bound}",
                           {"n": inst.n, "bound": bound})


def _profiles(inst: SMPInstance, name: str, limits: Limits
              ) -> Tuple[List[Optional[SIProfile]], Optional[ConditionResult]]:
    """Profiles of the components, or a failed result naming the first problem"""
    profiles: List[Optional[SIProfile]] = []
    for j, alg in enumerate(inst.components):
        try:
            profile = si_profile(alg, limits)
        except AlgebraError as e:
            return profiles, ConditionResult(name, False, f"component {j}: {e.message}",
                                             {"component": j, "code": e.code})
        profiles.append(profile)
    return profiles, None


def _check_similar(inst: SMPInstance, profiles: List[Optional[SIProfile]]) -> ConditionResult:
    for j, profile in enumerate(profiles):
        if profile is None:
            return ConditionResult("ii", False, f"component {j} is not subdirectly irreducible",
                                   {"component": j})
        if not profile.abelian:
            return ConditionResult("ii", False, f"component {j} has a nonabelian monolith",
                                   {"component": j, "monolith": str(profile.monolith)})
    first = profiles[0]
    assert first is not None
    for j, profile in enumerate(profiles[1:], start=1):
        assert profile is not None
        if profile.characteristic != first.characteristic:
            return ConditionResult(
                "ii", False, f"component {j} has characteristic {profile.characteristic}, "
                f"component 0 has {first.characteristic}", {"component": j})
        if not are_isomorphic(profile.reference, first.reference):
            return ConditionResult(
                "ii", False, f"A/(0:mu) of component {j} is not isomorphic to that of component 0",
                {"component": j})
    return ConditionResult("ii", True)


def _check_central(profiles: List[Optional[SIProfile]]) -> ConditionResult:
    name = "ii'"
    for j, profile in enumerate(profiles):
        if profile is None:
            return ConditionResult(name, False, f"component {j} is not subdirectly irreducible",
                                   {"component": j})
        if not profile.central:
            return ConditionResult(name, False, f"monolith of component {j} is not central",
                                   {"component": j, "centralizer": str(profile.centralizer)})
    characteristics = {p.characteristic for p in profiles if p is not None}
    if len(characteristics) != 1:
        return ConditionResult(name, False, "monoliths have different characteristics",
                               {"characteristics": sorted(characteristics)})
    return ConditionResult(name, True)


def _check_restrictions(inst: SMPInstance, d: int, limits: Limits) -> ConditionResult:
    """Small restrictions are subdirect and contain the restricted target"""
    bound = max(d, 3)
    for size in range(1, min(bound - 1, inst.n) + 1):
        for indices in itertools.combinations(range(inst.n), size):
            part = inst.restrict(indices)
            closed = generate_subuniverse(list(part.components), part.generators, limits=limits)
            rows = closed.rows()
            for q, j in enumerate(indices):
                if np.unique(rows[:, q]).size != inst.components[j].size:
                    return ConditionResult(
                        "iii", False, f"restriction to {list(indices)} is not subdirect",
                        {"coordinates": list(indices), "coordinate": j})
            if part.target not in closed:
                return ConditionResult(
                    "iii", False, f"target restricted to {list(indices)} is not generated",
                    {"coordinates": list(indices)})
    return ConditionResult("iii", True)


def _graph_map(pairs: np.ndarray, left: int, right: int) -> Optional[Tuple[int, ...]]:
    """The bijection right -> left whose graph is the given set of pairs, if any"""
    if pairs.shape[0] != left or left != right:
        return None
    if np.unique(pairs[:, 0]).size != left or np.unique(pairs[:, 1]).size != right:
        return None
    mapping = [0] * right
    for a, b in pairs.tolist():
        mapping[b] = a
    return tuple(mapping)


def _check_graphs(inst: SMPInstance, profiles: List[Optional[SIProfile]], limits: Limits
                  ) -> Tuple[ConditionResult, Dict[int, Tuple[int, ...]]]:
    """Generated relations between the A_j/rho_j are graphs of isomorphisms"""
    first = profiles[0]
    assert first is not None
    iota: Dict[int, Tuple[int, ...]] = {0: tuple(range(first.reference.size))}
    for i, j in itertools.combinations(range(inst.n), 2):
        pi, pj = profiles[i], profiles[j]
        assert pi is not None and pj is not None
        gens = [(pi.natural(g[i]), pj.natural(g[j])) for g in inst.generators]
        relation = generate_subuniverse([pi.reference, pj.reference], gens, limits=limits)
        mapping = _graph_map(relation.rows(), pi.reference.size, pj.reference.size)
        if mapping is None or not is_homomorphism(pj.reference, pi.reference, mapping):
            return ConditionResult(
                "iv", False, f"relation between components {i} and {j} is not the graph "
                "of an isomorphism", {"components": [i, j], "size": len(relation)}), iota
        if i == 0:
            iota[j] = mapping
    return ConditionResult("iv", True), iota


def check_d_coherent(inst: SMPInstance, d: int, limits: Optional[Limits] = None
                     ) -> CoherenceReport:
    """Conditions (i), (ii), (iii) and (iv) of d-coherence"""
    limits = limits or DEFAULT_LIMITS
    report = CoherenceReport(COHERENT, d)
    with computation_context("check_d_coherent", n=inst.n, k=inst.k, d=d):
        report.conditions.append(_check_size(inst, d))
        profiles, failure = _profiles(inst, "ii", limits)
        report.profiles = profiles
        similar = failure or _check_similar(inst, profiles)
        report.conditions.append(similar)
        report.conditions.append(_check_restrictions(inst, d, limits))
        if similar.passed:
            graphs, report.iota = _check_graphs(inst, profiles, limits)
        else:
            graphs = ConditionResult("iv", False, "needs subdirectly irreducible components "
                                     "with abelian monoliths")
        report.conditions.append(graphs)
    logger.debug("coherence", passed=report.passed,
                 failed=[c.name for c in report.conditions if not c.passed])
    return report


def check_d_central(inst: SMPInstance, d: int, limits: Optional[Limits] = None
                    ) -> CoherenceReport:
    """Conditions (i), (ii') and (iii) of d-centrality"""
    limits = limits or DEFAULT_LIMITS
    report = CoherenceReport(CENTRAL, d)
    with computation_context("check_d_central", n=inst.n, k=inst.k, d=d):
        report.conditions.append(_check_size(inst, d))
        profiles, failure = _profiles(inst, "ii'", limits)
        report.profiles = profiles
        report.conditions.append(failure or _check_central(profiles))
        report.conditions.append(_check_restrictions(inst, d, limits))
    logger.debug("centrality", passed=report.passed,
                 failed=[c.name for c in report.conditions if not c.passed])
    return report

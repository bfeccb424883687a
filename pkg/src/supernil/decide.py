"""Deciding supernilpotence through direct factorizations"""

import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import factorint

from ..commutator.commutator import is_nilpotent
from ..config.models import DEFAULT_LIMITS, Limits
from ..congruence.lattice import con_lattice, interval, relcompose, require_congruence
from ..congruence.partition import Partition
from ..construct.constructed import construct_c
from ..core.algebra import FiniteAlgebra
from ..core.homomorphism import quotient
from ..tct.types import prime_quotient_types
from ..utils.errors import CapExceededError, ConsistencyError, HypothesisError
from ..utils.logging import computation_context, get_logger

logger = get_logger(__name__)

ASSERTED = "asserted"
CHECKED = "checked"
UNVERIFIED = "unverified"

NILPOTENCE = "nilpotence"
CONDITION_3 = "condition-3"
CONDITIONS_1_2 = "conditions-1-2"

Candidate = Tuple[Partition, Optional[int]]


@dataclass
class CrossCheckRecord:
    """Outcome of the factorization search on the constructed algebra"""
    constructed: str
    size: int
    nilpotent: bool
    factors: List[Partition] = field(default_factory=list)
    primes: List[Optional[int]] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.nilpotent and bool(self.factors)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "constructed": self.constructed,
            "size": self.size,
            "nilpotent": self.nilpotent,
            "verdict": self.verdict,
            "factors": [str(g) for g in self.factors],
            "primes": self.primes,
        }


@dataclass
class SupernilCertificate:
    """Verdict on supernilpotence of alpha with its witnesses or the failed condition"""
    algebra: str
    alpha: Partition
    verdict: bool
    hypothesis: str
    witnesses: List[Partition] = field(default_factory=list)
    primes: List[Optional[int]] = field(default_factory=list)
    failure: Optional[str] = None
    series: List[Partition] = field(default_factory=list)
    cross_check: Optional[CrossCheckRecord] = None

    def verify(self, alg: FiniteAlgebra, limits: Optional[Limits] = None) -> bool:
        """Re-check the witnesses of a positive verdict"""
        if not self.verdict:
            return self.failure is not None
        if self.alpha.is_identity:
            return True
        if not is_nilpotent(alg, self.alpha, limits)[0]:
            return False
        lattice = con_lattice(alg, limits)
        if any(beta not in lattice or not beta.leq(self.alpha) for beta in self.witnesses):
            return False
        for beta, prime in zip(self.witnesses, self.primes):
            if _block_prime(self.alpha, beta) != (True, prime):
                return False
        return _factorizes(self.witnesses, self.alpha)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "alpha": str(self.alpha),
            "verdict": "yes" if self.verdict else "no",
            "hypothesis": self.hypothesis,
            "witnesses": [str(beta) for beta in self.witnesses],
            "primes": self.primes,
            "failure": self.failure,
            "series": [str(p) for p in self.series],
            "cross_check": self.cross_check.to_dict() if self.cross_check else None,
        }


def _prime_power_base(counts: Sequence[int]) -> Tuple[bool, Optional[int]]:
    """Whether all counts are powers of one prime; that prime, or None if all are 1"""
    primes = set()
    for count in counts:
        if count > 1:
            primes.update(factorint(count))
    if len(primes) > 1:
        return False, None
    return True, (int(next(iter(primes))) if primes else None)


def _block_prime(alpha: Partition, beta: Partition) -> Tuple[bool, Optional[int]]:
    """Prime p such that every block of alpha/beta has p-power many beta-classes"""
    counts = [len({beta.labels[a] for a in block}) for block in alpha.blocks()]
    return _prime_power_base(counts)


def _factorizes(betas: Sequence[Partition], alpha: Partition) -> bool:
    """Meet is 0 and each prefix meet permutes with the next member to give alpha"""
    if not betas:
        return False
    prefix = betas[0]
    target = alpha.pairs()
    for beta in betas[1:]:
        if relcompose(prefix, beta, 2) != target or relcompose(beta, prefix, 2) != target:
            return False
        prefix = prefix.meet(beta)
    return prefix.is_identity


def _search(candidates: Sequence[Candidate], alpha: Partition) -> Optional[List[Candidate]]:
    """First ordered subset, by size then lexicographically, satisfying the factorization"""
    for size in range(1, len(candidates) + 1):
        for subset in itertools.combinations(candidates, size):
            meet = subset[0][0]
            for beta, _ in subset[1:]:
                meet = meet.meet(beta)
            if not meet.is_identity:
                continue
            for ordering in itertools.permutations(subset):
                if _factorizes([beta for beta, _ in ordering], alpha):
                    return list(ordering)
    return None


def _require_candidate_cap(candidates: Sequence[Candidate], limits: Limits) -> None:
    if len(candidates) > limits.candidate_cap:
        raise CapExceededError(
            f"{len(candidates)} candidate congruences exceed the candidate cap "
            f"{limits.candidate_cap}",
            {"candidates": len(candidates), "cap": limits.candidate_cap},
        )


def omits_type1_locally(alg: FiniteAlgebra, limits: Optional[Limits] = None) -> bool:
    """No prime quotient of the algebra itself has type 1"""
    return all(t.type != 1 for _, _, t in prime_quotient_types(alg, limits=limits))


def _hypothesis_status(alg: FiniteAlgebra, asserted: bool, limits: Limits) -> str:
    try:
        holds = omits_type1_locally(alg, limits)
    except CapExceededError:
        if asserted:
            return UNVERIFIED
        raise HypothesisError(
            "Cannot check that type 1 is omitted within the configured caps; "
            "pass the omit-type-1 assertion to decide anyway",
            {"algebra": alg.name},
        ) from None
    if holds:
        return ASSERTED if asserted else CHECKED
    if asserted:
        raise HypothesisError(
            "The algebra has a prime quotient of type 1, contradicting the assertion "
            "that its variety omits type 1",
            {"algebra": alg.name},
        )
    raise HypothesisError(
        "The algebra has a prime quotient of type 1; supernilpotence is only decided "
        "for varieties omitting type 1",
        {"algebra": alg.name},
    )


def cross_check_via_c(
    alg: FiniteAlgebra,
    alpha: Partition,
    limits: Optional[Limits] = None,
) -> CrossCheckRecord:
    """Nilpotence and prime-power factorization of the algebra built over A/alpha"""
    limits = limits or DEFAULT_LIMITS
    _, chi = quotient(alg, alpha)
    c = construct_c(alg, chi, limits)
    total = Partition.total(c.size)
    nilpotent, _ = is_nilpotent(c.algebra, total, limits)
    record = CrossCheckRecord(c.algebra.name, c.size, nilpotent)
    if not nilpotent:
        return record
    candidates: List[Candidate] = []
    for gamma in con_lattice(c.algebra, limits):
        ok, prime = _prime_power_base([gamma.num_blocks])
        if ok:
            candidates.append((gamma, prime))
    _require_candidate_cap(candidates, limits)
    found = _search(candidates, total)
    if found:
        record.factors = [gamma for gamma, _ in found]
        record.primes = [prime for _, prime in found]
    return record


def decide_supernilpotent(
    alg: FiniteAlgebra,
    alpha: Partition,
    assert_omits_type1: bool = False,
    limits: Optional[Limits] = None,
    cross_check: bool = False,
) -> SupernilCertificate:
    """Decide whether alpha is supernilpotent.

    alpha is supernilpotent iff it is 0, or it is nilpotent and there are
    congruences beta_1..beta_l below alpha with meet 0, each prefix meet
    permuting with the next beta to give alpha, and for each beta_i a prime
    p_i such that every block of alpha/beta_i has p_i-power many classes.
    This holds when the variety of the algebra omits type 1.

    Raises:
        HypothesisError: If the omit-type-1 hypothesis is refuted or cannot be
            checked without the assertion
        ConsistencyError: If the cross-check disagrees
    """
    limits = limits or DEFAULT_LIMITS
    require_congruence(alg, alpha)
    with computation_context("supernil", algebra=alg.name, alpha=str(alpha)):
        if alpha.is_identity:
            status = ASSERTED if assert_omits_type1 else UNVERIFIED
            certificate = SupernilCertificate(
                alg.name, alpha, True, status,
                witnesses=[alpha], primes=[None], series=[alpha],
            )
        else:
            status = _hypothesis_status(alg, assert_omits_type1, limits)
            certificate = _decide(alg, alpha, status, limits)
        if cross_check:
            record = cross_check_via_c(alg, alpha, limits)
            certificate.cross_check = record
            if record.verdict != certificate.verdict:
                raise ConsistencyError(
                    "Factorization of the constructed algebra disagrees with the direct decision",
                    {"direct": certificate.verdict, "constructed": record.verdict,
                     "algebra": alg.name, "alpha": str(alpha)},
                )
    logger.debug("supernil verdict", algebra=alg.name, alpha=str(alpha),
                 verdict=certificate.verdict, failure=certificate.failure)
    return certificate


def _decide(alg: FiniteAlgebra, alpha: Partition, status: str, limits: Limits
            ) -> SupernilCertificate:
    nilpotent, series = is_nilpotent(alg, alpha, limits)
    if not nilpotent:
        return SupernilCertificate(alg.name, alpha, False, status,
                                   failure=NILPOTENCE, series=series)
    below = interval(con_lattice(alg, limits), Partition.identity(alg.size), alpha)
    candidates: List[Candidate] = []
    for beta in below:
        ok, prime = _block_prime(alpha, beta)
        if ok:
            candidates.append((beta, prime))
    if not candidates:
        return SupernilCertificate(alg.name, alpha, False, status,
                                   failure=CONDITION_3, series=series)
    _require_candidate_cap(candidates, limits)
    found = _search(candidates, alpha)
    if found is None:
        return SupernilCertificate(alg.name, alpha, False, status,
                                   failure=CONDITIONS_1_2, series=series)
    return SupernilCertificate(
        alg.name, alpha, True, status,
        witnesses=[beta for beta, _ in found],
        primes=[prime for _, prime in found],
        series=series,
    )

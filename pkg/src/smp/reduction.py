"""Reduction of coherent subpower membership inputs to central ones"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config.models import DEFAULT_LIMITS, Limits
from ..construct.constructed import ConstructedAlgebra, construct_c
from ..construct.star import tilde_map
from ..core.algebra import FiniteAlgebra
from ..core.closure import close
from ..core.homomorphism import SortedHom, find_isomorphism
from ..monitoring.metrics import METRICS, MetricsManager
from ..utils.errors import ConsistencyError, ValidationError
from ..utils.logging import computation_context, get_logger
from .coherence import CoherenceReport, check_d_central, check_d_coherent
from .instance import SMPInstance
from .kstar import SimilarityClass

logger = get_logger(__name__)

PADDING_CELLS = "padding.cells"


@dataclass
class ReductionResult:
    class_index: int
    chis: List[SortedHom]
    paddings: List[Tuple[int, ...]]
    constructed: List[ConstructedAlgebra]
    instance: SMPInstance
    central: CoherenceReport
    cells: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "class": self.class_index,
            "chis": [list(chi.labels) for chi in self.chis],
            "paddings": [list(p) for p in self.paddings],
            "instance": {
                "sizes": [c.size for c in self.constructed],
                "generators": [list(g) for g in self.instance.generators],
                "target": list(self.instance.target),
            },
            "central": self.central.to_dict(),
            "padding_cells": self.cells,
        }


def _require_index(chis: Sequence[SortedHom], index_alg: FiniteAlgebra) -> None:
    if not chis:
        raise ValidationError("At least one component is required")
    for j, chi in enumerate(chis):
        if chi.codomain != index_alg:
            raise ValidationError(f"Map of component {j} has another index algebra",
                                  {"component": j})


def _sort_of(row: Sequence[int], chis: Sequence[SortedHom]) -> Optional[int]:
    sorts = {chi(a) for a, chi in zip(row, chis)}
    return sorts.pop() if len(sorts) == 1 else None


def padding_elements(
    generators: Sequence[Sequence[int]],
    chis: Sequence[SortedHom],
    index_alg: FiniteAlgebra,
    metrics: Optional[MetricsManager] = None,
) -> List[Tuple[int, ...]]:
    """One element d^(i) of the generated subalgebra in each sort i.

    The generators' images in the index algebra are closed with derivations
    recorded, keeping one generator per image. Each element of the index
    algebra is then rebuilt from those generators by replaying its derivation
    coordinatewise in the product. Every table lookup is counted under
    ``padding.cells``.

    Raises:
        ValidationError: If a generator is not constant modulo the kernels
        ConsistencyError: If some sort is not reached
    """
    metrics = metrics or METRICS
    _require_index(chis, index_alg)
    components = [chi.domain for chi in chis]
    n = len(components)
    if index_alg.size == 1:
        return [tuple(0 for _ in components)]

    images: List[int] = []
    for r, g in enumerate(generators):
        sort = _sort_of(g, chis)
        if sort is None:
            raise ValidationError(f"Generator {r} is not constant modulo the kernels",
                                  {"generator": list(g)})
        images.append(sort)
    metrics.increment(PADDING_CELLS, len(images) * n)

    representatives: Dict[int, int] = {}
    for r, i in enumerate(images):
        representatives.setdefault(i, r)
    run = close([index_alg], [(i,) for i in representatives], track=True)

    values: Dict[int, Tuple[int, ...]] = {
        g: tuple(int(v) for v in generators[r])
        for g, r in enumerate(representatives.values())
    }

    def value(index: int) -> Tuple[int, ...]:
        stack = [index]
        while stack:
            current = stack[-1]
            if current in values:
                stack.pop()
                continue
            symbol, args = run.provenance[current]
            pending = [a for a in args if a not in values]
            if pending:
                stack.extend(pending)
                continue
            values[current] = tuple(
                alg.apply(symbol, [values[a][j] for a in args])
                for j, alg in enumerate(components)
            )
            metrics.increment(PADDING_CELLS, n)
            stack.pop()
        return values[index]

    where = {run.row(index)[0]: index for index in range(len(run.members))}
    paddings = []
    for i in index_alg.elements:
        if i not in where:
            raise ConsistencyError(f"Sort {i} is not reached by the generators",
                                   {"images": sorted(set(images))})
        paddings.append(value(where[i]))
    return paddings


def transfer_instance(
    inst: SMPInstance,
    chis: Sequence[SortedHom],
    limits: Optional[Limits] = None,
    metrics: Optional[MetricsManager] = None,
) -> Tuple[List[ConstructedAlgebra], List[Tuple[int, ...]], SMPInstance]:
    """Carry an instance to the constructed algebras of (A_j, chi_j).

    Generators and target are padded with one generated element per sort.
    """
    limits = limits or DEFAULT_LIMITS
    if len(chis) != inst.n:
        raise ValidationError(f"{len(chis)} maps given for {inst.n} components")
    for j, (alg, chi) in enumerate(zip(inst.components, chis)):
        if chi.domain != alg:
            raise ValidationError(f"Map {j} is defined on another algebra", {"component": j})
    index_alg = chis[0].codomain
    with computation_context("transfer_instance", n=inst.n, k=inst.k, m=index_alg.size):
        paddings = padding_elements(inst.generators, chis, index_alg, metrics)
        built: Dict[Tuple[FiniteAlgebra, Tuple[int, ...]], ConstructedAlgebra] = {}
        constructed = []
        for alg, chi in zip(inst.components, chis):
            key = (alg, chi.labels)
            if key not in built:
                built[key] = construct_c(alg, chi, limits)
            constructed.append(built[key])
        if _sort_of(inst.target, chis) is None:
            raise ValidationError("Target is not constant modulo the kernels",
                                  {"target": list(inst.target)})
        reduced = SMPInstance(
            tuple(c.algebra for c in constructed),
            tuple(tilde_map(g, paddings, constructed) for g in inst.generators),
            tilde_map(inst.target, paddings, constructed),
        )
    return constructed, paddings, reduced


def _find_class(inst: SMPInstance, classes: Sequence[SimilarityClass]) -> SimilarityClass:
    for cls in classes:
        if all(cls.covers(alg) for alg in inst.components):
            return cls
    raise ValidationError("Components are not covered by a single similarity class",
                          {"classes": len(classes)})


def reduce_instance(
    inst: SMPInstance,
    classes: Sequence[SimilarityClass],
    d: int,
    limits: Optional[Limits] = None,
) -> ReductionResult:
    """Reduce a d-coherent instance to a d-central one with the same answer.

    chi_j is the first isomorphism from A_0/rho_0 onto the class index algebra,
    composed with the isomorphism A_j/rho_j -> A_0/rho_0 read off the generated
    relations, and with the natural map of A_j.

    Raises:
        ValidationError: If the instance is not d-coherent or no class covers it
        ConsistencyError: If the reduced instance is not d-central
    """
    limits = limits or DEFAULT_LIMITS
    with computation_context("reduce_instance", n=inst.n, k=inst.k, d=d):
        coherent = check_d_coherent(inst, d, limits)
        if not coherent.passed:
            raise ValidationError(
                "Instance is not d-coherent",
                {"failed": [c.to_dict() for c in coherent.conditions if not c.passed]},
            )
        cls = _find_class(inst, classes)
        first = coherent.profiles[0]
        assert first is not None
        phi = find_isomorphism(first.reference, cls.reference)
        if phi is None:
            raise ConsistencyError(f"Class {cls.index} index algebra is not isomorphic "
                                   "to A_0/(0:mu)", {"class": cls.index})

        chis = []
        for j, profile in enumerate(coherent.profiles):
            assert profile is not None
            iota = coherent.iota[j]
            labels = [phi[iota[profile.natural(a)]] for a in profile.algebra.elements]
            chis.append(SortedHom(profile.algebra, cls.reference, labels))

        metrics = MetricsManager()
        constructed, paddings, reduced = transfer_instance(inst, chis, limits, metrics)
        central = check_d_central(reduced, d, limits)
        if not central.passed:
            raise ConsistencyError(
                "Reduced instance is not d-central",
                {"failed": [c.to_dict() for c in central.conditions if not c.passed]},
            )
    cells = metrics.counter(PADDING_CELLS)
    METRICS.increment(PADDING_CELLS, cells)
    logger.info("instance reduced", cls=cls.index, n=inst.n, k=inst.k, cells=cells)
    return ReductionResult(cls.index, chis, paddings, constructed, reduced, central, cells)

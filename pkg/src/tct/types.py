"""Type and characteristic of prime quotients"""

import itertools
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np
from sympy import factorint

from ..commutator.commutator import is_abelian
from ..config.models import DEFAULT_LIMITS, Limits
from ..congruence.lattice import covering_pairs
from ..congruence.partition import Partition
from ..core.algebra import FiniteAlgebra, Operation
from ..utils.errors import CapExceededError, ConsistencyError
from ..utils.logging import computation_context, get_logger
from .minimal import minimal_sets
from .polynomials import polynomial_clone_on

logger = get_logger(__name__)

TYPE_LABELS = {1: "unary", 2: "affine", 3: "boolean", 4: "lattice", 5: "semilattice"}


@dataclass(frozen=True)
class TCTType:
    """Type of a prime quotient; characteristic only for type 2"""
    type: int
    characteristic: Optional[int] = None

    @property
    def label(self) -> str:
        return TYPE_LABELS[self.type]

    def to_dict(self) -> Dict[str, Any]:
        return {"type": self.type, "label": self.label, "characteristic": self.characteristic}

    def __str__(self) -> str:
        if self.characteristic is not None:
            return f"{self.type} ({self.label}, characteristic {self.characteristic})"
        return f"{self.type} ({self.label})"


def induced_algebra(
    alg: FiniteAlgebra,
    trace: FrozenSet[int],
    delta: Partition,
    limits: Optional[Limits] = None,
) -> FiniteAlgebra:
    """The minimal algebra: polynomials closed on the trace, restricted, modulo delta.

    Operations are the distinct induced operations of the configured arity,
    named p0, p1, ... in lexicographic order of their tables.
    """
    limits = limits or DEFAULT_LIMITS
    if len(trace) > limits.trace_size_cap:
        raise CapExceededError(
            f"Trace of size {len(trace)} exceeds the trace cap {limits.trace_size_cap}",
            {"trace": sorted(trace)},
        )
    r = limits.induced_arity
    elements = sorted(trace)
    points = np.array(list(itertools.product(elements, repeat=r)), dtype=np.int64)
    rows = polynomial_clone_on(alg, points, limits).rows()
    rows = rows[np.isin(rows, elements).all(axis=1)]

    representatives = sorted({delta.labels[a] for a in elements})
    class_of = np.full(alg.size, -1, dtype=np.int64)
    for a in elements:
        class_of[a] = representatives.index(delta.labels[a])
    q = len(representatives)
    # position within the trace of the least trace element of each class
    first = [min(elements.index(a) for a in elements if class_of[a] == c) for c in range(q)]
    m_args = np.array(list(itertools.product(range(q), repeat=r)), dtype=np.int64)
    point_index = np.zeros(m_args.shape[0], dtype=np.int64)
    for p in range(r):
        point_index = point_index * len(elements) + np.asarray(first)[m_args[:, p]]
    tables = np.unique(class_of[rows[:, point_index]], axis=0)
    ops = [Operation(f"p{i}", r, table) for i, table in enumerate(tables)]
    return FiniteAlgebra(q, ops, name=f"{alg.name}|{''.join(map(str, elements))}/delta")


def _depends_on(view: np.ndarray, axis: int) -> bool:
    return bool((view != np.take(view, [0], axis=axis)).any())


def _ternary_minor(view: np.ndarray) -> np.ndarray:
    """Identify trailing variables with the third one"""
    while view.ndim > 3:
        view = np.diagonal(view, axis1=-2, axis2=-1)
    return view


def _has_maltsev(views: np.ndarray, q: int) -> bool:
    x, y = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    first = (views[:, x, x, y] == y).all(axis=(1, 2))
    second = (views[:, x, y, y] == x).all(axis=(1, 2))
    return bool((first & second).any())


def _semilattice_operations(views: np.ndarray) -> Tuple[bool, bool]:
    """Whether some binary induced operation on two elements is min, resp. max"""
    meet = np.array([[0, 0], [0, 1]])
    join = np.array([[0, 1], [1, 1]])
    has_meet = has_join = False
    for view in views:
        for dummy in range(3):
            if _depends_on(view, dummy):
                continue
            binary = np.take(view, 0, axis=dummy)
            has_meet = has_meet or bool((binary == meet).all())
            has_join = has_join or bool((binary == join).all())
    return has_meet, has_join


def classify_minimal_algebra(minimal: FiniteAlgebra, limits: Optional[Limits] = None) -> TCTType:
    """Decide the type from the induced operations of a minimal algebra"""
    q = minimal.size
    full = [op.view(q) for op in minimal.operations]
    essential = [sum(_depends_on(v, p) for p in range(v.ndim)) for v in full]
    views = np.stack([_ternary_minor(v) for v in full])
    if max(essential, default=0) <= 1:
        return TCTType(1)
    if _has_maltsev(views, q):
        if is_abelian(minimal, limits=limits):
            primes = factorint(q)
            if len(primes) != 1:
                raise ConsistencyError(
                    f"Affine minimal algebra of size {q} is not of prime power order",
                    {"size": q},
                )
            return TCTType(2, int(next(iter(primes))))
        return TCTType(3)
    if q != 2:
        raise ConsistencyError(
            f"Minimal algebra of size {q} without a Maltsev operation is not unary",
            {"size": q},
        )
    has_meet, has_join = _semilattice_operations(views)
    if has_meet and has_join:
        return TCTType(4)
    if has_meet or has_join:
        return TCTType(5)
    raise ConsistencyError("Type classification fell through", {"algebra": minimal.name})


def classify_type(
    alg: FiniteAlgebra,
    delta: Partition,
    theta: Partition,
    limits: Optional[Limits] = None,
) -> TCTType:
    """Type (and characteristic for type 2) of the prime quotient delta < theta"""
    limits = limits or DEFAULT_LIMITS
    with computation_context("classify_type", algebra=alg.name, delta=str(delta),
                             theta=str(theta)):
        first = minimal_sets(alg, delta, theta, limits)[0]
        trace = first.traces[0]
        minimal = induced_algebra(alg, trace, delta, limits)
        result = classify_minimal_algebra(minimal, limits)
    logger.debug("type", algebra=alg.name, delta=str(delta), theta=str(theta), type=result.type)
    return result


def prime_quotient_types(
    alg: FiniteAlgebra,
    alpha: Optional[Partition] = None,
    limits: Optional[Limits] = None,
) -> List[Tuple[Partition, Partition, TCTType]]:
    """Types of every prime quotient below alpha (default: all of Con)"""
    return [
        (delta, theta, classify_type(alg, delta, theta, limits))
        for delta, theta in covering_pairs(alg, alpha, limits)
    ]

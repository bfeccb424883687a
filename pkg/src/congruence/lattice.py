"""Congruence generation and congruence lattices"""

from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..core.algebra import FiniteAlgebra
from ..utils.errors import CapExceededError, NotCongruenceError, ValidationError
from ..utils.logging import get_logger
from .partition import Partition, UnionFind

logger = get_logger(__name__)

Pair = Tuple[int, int]


def _translation_rows(alg: FiniteAlgebra) -> List[np.ndarray]:
    """Per operation and argument position, the table with that position as axis 0"""
    rows = []
    n = alg.size
    for op in alg.operations:
        view = op.view(n)
        for p in range(op.arity):
            rows.append(np.moveaxis(view, p, 0).reshape(n, -1))
    return rows


def cg(alg: FiniteAlgebra, pairs: Iterable[Pair]) -> Partition:
    """Least congruence containing the given pairs.

    Every successful merge is pushed on a worklist; its images under all basic
    translations (one operation, one free position, constants elsewhere) are
    merged in turn until nothing changes.
    """
    n = alg.size
    uf = UnionFind(n)
    worklist: List[Pair] = []
    for a, b in pairs:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise ValidationError(f"Pair ({a}, {b}) outside universe of size {n}")
        if uf.union(a, b):
            worklist.append((a, b))
    if not worklist:
        return Partition.identity(n)
    translations = _translation_rows(alg)
    while worklist:
        a, b = worklist.pop()
        for rows in translations:
            left, right = rows[a], rows[b]
            differ = np.flatnonzero(left != right)
            for x, y in zip(left[differ].tolist(), right[differ].tolist()):
                if uf.union(x, y):
                    worklist.append((x, y))
    return Partition.from_labels(uf.labels())


def is_congruence(alg: FiniteAlgebra, part: Partition) -> bool:
    if part.size != alg.size:
        return False
    return cg(alg, part.generating_pairs()) == part


def require_congruence(alg: FiniteAlgebra, part: Partition, what: str = "partition") -> None:
    """Raise NotCongruenceError unless part is a congruence of alg"""
    if part.size != alg.size:
        raise ValidationError(
            f"The {what} is on {part.size} elements but the algebra has {alg.size}",
            {"partition": str(part)},
        )
    if not is_congruence(alg, part):
        raise NotCongruenceError(
            f"The {what} {part} is not a congruence of {alg.name or 'the algebra'}",
            {"partition": str(part), "algebra": alg.name},
        )


def principal(alg: FiniteAlgebra, a: int, b: int) -> Partition:
    return cg(alg, [(a, b)])


@lru_cache(maxsize=256)
def _lattice(alg: FiniteAlgebra, cap: int) -> Tuple[Partition, ...]:
    n = alg.size
    found = {Partition.identity(n)}
    for a in range(n):
        for b in range(a + 1, n):
            found.add(principal(alg, a, b))
    # Congruence joins coincide with joins of the underlying equivalences
    frontier = list(found)
    while frontier:
        if len(found) > cap:
            raise CapExceededError(
                f"Congruence lattice of {alg.name or 'the algebra'} exceeds {cap} elements",
                {"cap": cap, "size": n},
            )
        fresh = []
        current = sorted(found, key=Partition.sort_key)
        for p in frontier:
            for q in current:
                joined = p.join(q)
                if joined not in found:
                    found.add(joined)
                    fresh.append(joined)
        frontier = fresh
    if len(found) > cap:
        raise CapExceededError(
            f"Congruence lattice of {alg.name or 'the algebra'} exceeds {cap} elements",
            {"cap": cap, "size": n},
        )
    lattice = tuple(sorted(found, key=Partition.sort_key))
    logger.debug("congruence lattice", algebra=alg.name, size=n, congruences=len(lattice))
    return lattice


def con_lattice(alg: FiniteAlgebra, limits: Optional[Limits] = None) -> List[Partition]:
    """All congruences, finest first (then by labels)"""
    limits = limits or DEFAULT_LIMITS
    return list(_lattice(alg, limits.lattice_cap))


def meet(p: Partition, q: Partition) -> Partition:
    return p.meet(q)


def join(alg: FiniteAlgebra, p: Partition, q: Partition) -> Partition:
    """Congruence generated by the union of p and q"""
    return cg(alg, p.generating_pairs() + q.generating_pairs())


def relcompose(p: Partition, q: Partition, k: int) -> FrozenSet[Pair]:
    """k-fold alternating relational product p o q o p o ... as a set of pairs"""
    if k < 1:
        raise ValidationError("Composition needs at least one factor")
    if p.size != q.size:
        raise ValidationError("Partitions on different universes")
    factors = (p.to_matrix().astype(np.int64), q.to_matrix().astype(np.int64))
    result = factors[0]
    for i in range(1, k):
        result = ((result @ factors[i % 2]) > 0).astype(np.int64)
    xs, ys = np.nonzero(result)
    return frozenset(zip(xs.tolist(), ys.tolist()))


def permutes(p: Partition, q: Partition, k: int = 2) -> bool:
    """Whether p and q k-permute"""
    return relcompose(p, q, k) == relcompose(q, p, k)


def monolith(alg: FiniteAlgebra, limits: Optional[Limits] = None) -> Optional[Partition]:
    """Unique minimal nonidentity congruence, or None if the algebra is not SI"""
    if alg.size < 2:
        return None
    nontrivial = [p for p in con_lattice(alg, limits) if not p.is_identity]
    atoms = [p for p in nontrivial if not any(q != p and q.leq(p) for q in nontrivial)]
    if len(atoms) != 1:
        return None
    return atoms[0]


def interval(lattice: Sequence[Partition], lo: Partition, hi: Partition) -> List[Partition]:
    return [p for p in lattice if lo.leq(p) and p.leq(hi)]


def covers(lattice: Sequence[Partition], delta: Partition, theta: Partition) -> bool:
    """Whether theta covers delta in the given lattice"""
    if delta == theta or not delta.leq(theta):
        return False
    return not any(
        p != delta and p != theta and delta.leq(p) and p.leq(theta) for p in lattice
    )


def covering_pairs(
    alg: FiniteAlgebra,
    alpha: Optional[Partition] = None,
    limits: Optional[Limits] = None,
) -> List[Tuple[Partition, Partition]]:
    """Prime quotients delta < theta with theta below alpha (default: all of them)"""
    lattice = con_lattice(alg, limits)
    alpha = alpha or Partition.total(alg.size)
    below = interval(lattice, Partition.identity(alg.size), alpha)
    return [(d, t) for d in below for t in below if covers(below, d, t)]

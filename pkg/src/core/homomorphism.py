"""Sorted homomorphisms, quotients, isomorphism search and HS-closure"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..congruence.lattice import con_lattice, require_congruence
from ..congruence.partition import Partition
from ..utils.errors import CapExceededError, SignatureError, ValidationError
from ..utils.logging import get_logger
from .algebra import FiniteAlgebra, Operation, close_subset, decode_mixed_radix, subalgebra

logger = get_logger(__name__)


def _argument_digits(size: int, arity: int) -> np.ndarray:
    """Argument tuples of every table cell, shape (size**arity, arity)"""
    return decode_mixed_radix(np.arange(size ** arity, dtype=np.int64), [size] * arity)


def is_homomorphism(a: FiniteAlgebra, b: FiniteAlgebra, mapping: Sequence[int]) -> bool:
    """Exhaustive check that mapping: a -> b commutes with every operation"""
    if a.signature != b.signature or len(mapping) != a.size:
        return False
    image = np.asarray(mapping, dtype=np.int64)
    if image.size and (image.min() < 0 or image.max() >= b.size):
        return False
    for op in a.operations:
        digits = _argument_digits(a.size, op.arity)
        mapped = np.zeros(digits.shape[0], dtype=np.int64)
        for q in range(op.arity):
            mapped = mapped * b.size + image[digits[:, q]]
        if not np.array_equal(image[op.table], b.table(op.symbol)[mapped]):
            return False
    return True


@dataclass(frozen=True, eq=False)
class SortedHom:
    """Surjective homomorphism chi: domain -> codomain onto {0..m-1}"""
    domain: FiniteAlgebra
    codomain: FiniteAlgebra
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(int(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.domain.size:
            raise ValidationError(
                f"Map has {len(labels)} entries, domain has {self.domain.size} elements"
            )
        if set(labels) != set(range(self.codomain.size)):
            raise ValidationError(
                f"Map {list(labels)} is not surjective onto 0..{self.codomain.size - 1}"
            )
        if not is_homomorphism(self.domain, self.codomain, labels):
            raise ValidationError(
                f"Map {list(labels)} is not a homomorphism", {"labels": list(labels)}
            )

    @classmethod
    def from_labels(cls, alg: FiniteAlgebra, labels: Sequence[int]) -> "SortedHom":
        """Build the codomain induced by a labeling whose kernel is a congruence"""
        labels = tuple(int(v) for v in labels)
        if len(labels) != alg.size:
            raise ValidationError(
                f"Map has {len(labels)} entries, domain has {alg.size} elements"
            )
        m = max(labels, default=-1) + 1
        if set(labels) != set(range(m)):
            raise ValidationError(f"Map {list(labels)} is not surjective onto 0..{m - 1}")
        require_congruence(alg, Partition.from_labels(labels), "kernel")
        representatives = np.array([labels.index(i) for i in range(m)], dtype=np.int64)
        label_array = np.asarray(labels, dtype=np.int64)
        ops = []
        for op in alg.operations:
            digits = _argument_digits(m, op.arity)
            index = np.zeros(digits.shape[0], dtype=np.int64)
            for q in range(op.arity):
                index = index * alg.size + representatives[digits[:, q]]
            ops.append(Operation(op.symbol, op.arity, label_array[op.table[index]]))
        codomain = FiniteAlgebra(m, ops, name=f"{alg.name}/chi")
        return cls(alg, codomain, labels)

    @property
    def m(self) -> int:
        return self.codomain.size

    def kernel(self) -> Partition:
        return Partition.from_labels(self.labels)

    def classes(self) -> Tuple[Tuple[int, ...], ...]:
        """D^(i) = chi^-1(i), each sorted ascending"""
        grouped: Dict[int, List[int]] = {i: [] for i in range(self.m)}
        for a, label in enumerate(self.labels):
            grouped[label].append(a)
        return tuple(tuple(grouped[i]) for i in range(self.m))

    def __call__(self, a: int) -> int:
        return self.labels[a]

    def __repr__(self) -> str:
        return f"SortedHom({self.domain.name or '?'} -> {self.m}, {list(self.labels)})"


def quotient(alg: FiniteAlgebra, part: Partition) -> Tuple[FiniteAlgebra, SortedHom]:
    """Quotient algebra with classes numbered by least element, and the natural map"""
    require_congruence(alg, part)
    rank = {rep: i for i, rep in enumerate(sorted(set(part.labels)))}
    hom = SortedHom.from_labels(alg, [rank[label] for label in part.labels])
    quotient_alg = hom.codomain.renamed(f"{alg.name}/{part}")
    return quotient_alg, SortedHom(alg, quotient_alg, hom.labels)


def element_profiles(alg: FiniteAlgebra) -> List[Tuple[Tuple[int, int], ...]]:
    """Isomorphism-invariant fingerprint of each element"""
    n = alg.size
    features = []
    for op in alg.operations:
        counts = np.bincount(op.table, minlength=n)
        diagonal = np.arange(n, dtype=np.int64) * sum(n ** j for j in range(op.arity))
        fixed = op.table[diagonal] == np.arange(n)
        features.append((counts.tolist(), fixed.tolist()))
    return [
        tuple((counts[x], int(fixed[x])) for counts, fixed in features) for x in range(n)
    ]


def iter_isomorphisms(a: FiniteAlgebra, b: FiniteAlgebra) -> Iterator[Tuple[int, ...]]:
    """All isomorphisms a -> b in lexicographic order of their image lists.

    Backtracking over images of 0, 1, ... with propagation: once all arguments
    of a table cell are mapped, the image of its value is forced.
    """
    if a.signature != b.signature:
        raise SignatureError(
            "Isomorphism search needs a shared signature",
            {"left": list(a.signature.names), "right": list(b.signature.names)},
        )
    if a.size != b.size:
        return
    n = a.size
    profile_a, profile_b = element_profiles(a), element_profiles(b)
    if sorted(profile_a) != sorted(profile_b):
        return
    cells = [
        (_argument_digits(n, op.arity), op.table, b.table(op.symbol)) for op in a.operations
    ]

    def propagate(image: np.ndarray) -> Optional[np.ndarray]:
        changed = True
        while changed:
            changed = False
            for digits, table_a, table_b in cells:
                known = (image[digits] >= 0).all(axis=1)
                if not known.any():
                    continue
                args = image[digits[known]]
                target = np.zeros(args.shape[0], dtype=np.int64)
                for q in range(args.shape[1]):
                    target = target * n + args[:, q]
                source = table_a[known]
                wanted = table_b[target]
                current = image[source]
                assigned = current >= 0
                if (current[assigned] != wanted[assigned]).any():
                    return None
                for s, t in zip(source[~assigned].tolist(), wanted[~assigned].tolist()):
                    if image[s] >= 0:
                        if image[s] != t:
                            return None
                        continue
                    if t in image or profile_a[s] != profile_b[t]:
                        return None
                    image[s] = t
                    changed = True
        return image

    def search(image: np.ndarray) -> Iterator[Tuple[int, ...]]:
        free = np.flatnonzero(image < 0)
        if free.size == 0:
            yield tuple(int(v) for v in image)
            return
        x = int(free[0])
        used = set(image[image >= 0].tolist())
        for y in range(n):
            if y in used or profile_a[x] != profile_b[y]:
                continue
            trial = image.copy()
            trial[x] = y
            extended = propagate(trial)
            if extended is not None:
                yield from search(extended)

    start = propagate(np.full(n, -1, dtype=np.int64))
    if start is None:
        return
    for candidate in search(start):
        if is_homomorphism(a, b, candidate):
            yield candidate


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> Optional[Tuple[int, ...]]:
    """First isomorphism in lexicographic order, or None"""
    return next(iter_isomorphisms(a, b), None)


def are_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    return find_isomorphism(a, b) is not None


def subuniverses(alg: FiniteAlgebra, limits: Optional[Limits] = None) -> List[frozenset]:
    """All nonempty subuniverses, sorted by size then elements"""
    limits = limits or DEFAULT_LIMITS
    found = {close_subset(alg, [a]) for a in alg.elements}
    frontier = list(found)
    while frontier:
        fresh = []
        for s in frontier:
            for t in list(found):
                if s <= t or t <= s:
                    continue
                joined = close_subset(alg, s | t)
                if joined not in found:
                    found.add(joined)
                    fresh.append(joined)
                    if len(found) > limits.lattice_cap:
                        raise CapExceededError(
                            f"More than {limits.lattice_cap} subuniverses",
                            {"algebra": alg.name},
                        )
        frontier = fresh
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _quotients_of(sub: FiniteAlgebra, limits: Limits) -> List[FiniteAlgebra]:
    return [quotient(sub, theta)[0] for theta in con_lattice(sub, limits)]


def hs_closure(
    ks: Sequence[FiniteAlgebra],
    cap: Optional[int] = None,
    limits: Optional[Limits] = None,
) -> List[FiniteAlgebra]:
    """Quotients of subalgebras of the given algebras, one per isomorphism type.

    Sorted by size; within a size, in order of discovery (algebras, then
    subuniverses, then congruences, all in their canonical orders).
    """
    limits = limits or DEFAULT_LIMITS
    cap = limits.hs_cap if cap is None else cap
    if not ks:
        return []
    signature = ks[0].signature
    for alg in ks:
        if alg.signature != signature:
            raise SignatureError("Algebras do not share a signature", {"algebra": alg.name})

    subs = [subalgebra(alg, s)[0] for alg in ks for s in subuniverses(alg, limits)]
    with ThreadPoolExecutor(max_workers=limits.threads) as executor:
        batches = list(executor.map(lambda s: _quotients_of(s, limits), subs))

    members: List[FiniteAlgebra] = []
    by_size: Dict[int, List[FiniteAlgebra]] = {}
    for batch in batches:
        for candidate in batch:
            same_size = by_size.setdefault(candidate.size, [])
            if any(are_isomorphic(candidate, other) for other in same_size):
                continue
            same_size.append(candidate)
            members.append(candidate)
            if len(members) > cap:
                raise CapExceededError(
                    f"HS-closure has more than {cap} isomorphism types", {"cap": cap}
                )
    members.sort(key=lambda alg: alg.size)
    logger.debug("hs closure", inputs=len(ks), members=len(members))
    return members

"""Partitions in canonical least-representative form"""

import json
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.errors import ValidationError
from ..utils.logging import get_logger

logger = get_logger(__name__)


class UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by rank"""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of x and y; False if they were already merged"""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return True

    def labels(self) -> List[int]:
        return [self.find(i) for i in range(len(self.parent))]


class Partition:
    """Equivalence relation on {0..n-1}; labels[i] is the least element of i's class"""

    __slots__ = ("labels",)

    def __init__(self, labels: Sequence[int]):
        labels = tuple(int(v) for v in labels)
        for i, label in enumerate(labels):
            if not 0 <= label <= i or labels[label] != label:
                raise ValidationError(
                    "Partition labels are not in canonical form", {"labels": list(labels)}
                )
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Partition is immutable")

    @classmethod
    def from_labels(cls, class_ids: Sequence[int]) -> "Partition":
        """Canonicalize arbitrary class identifiers"""
        first: Dict[int, int] = {}
        labels = []
        for i, cid in enumerate(class_ids):
            labels.append(first.setdefault(int(cid), i))
        return cls(labels)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Build from blocks; elements not mentioned stay singletons"""
        uf = UnionFind(n)
        seen = set()
        for block in blocks:
            block = [int(a) for a in block]
            for a in block:
                if not 0 <= a < n:
                    raise ValidationError(f"Element {a} outside 0..{n - 1}")
                if a in seen:
                    raise ValidationError(f"Element {a} appears in two blocks")
                seen.add(a)
            for a in block[1:]:
                uf.union(block[0], a)
        return cls.from_labels(uf.labels())

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Partition":
        """Equivalence relation generated by pairs"""
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(int(a), int(b))
        return cls.from_labels(uf.labels())

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(range(n))

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls([0] * n)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def num_blocks(self) -> int:
        return sum(1 for i, label in enumerate(self.labels) if label == i)

    @property
    def is_identity(self) -> bool:
        return all(label == i for i, label in enumerate(self.labels))

    @property
    def is_total(self) -> bool:
        return all(label == 0 for label in self.labels)

    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        """Blocks ordered by least element"""
        grouped: Dict[int, List[int]] = {}
        for i, label in enumerate(self.labels):
            grouped.setdefault(label, []).append(i)
        return tuple(tuple(grouped[k]) for k in sorted(grouped))

    def block_of(self, a: int) -> Tuple[int, ...]:
        label = self.labels[a]
        return tuple(i for i, other in enumerate(self.labels) if other == label)

    def related(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def pairs(self) -> FrozenSet[Tuple[int, int]]:
        """All related pairs, reflexive ones included"""
        return frozenset(
            (a, b) for block in self.blocks() for a in block for b in block
        )

    def generating_pairs(self) -> List[Tuple[int, int]]:
        return [(label, i) for i, label in enumerate(self.labels) if label != i]

    def to_matrix(self) -> np.ndarray:
        labels = np.asarray(self.labels)
        return labels[:, None] == labels[None, :]

    def leq(self, other: "Partition") -> bool:
        """Refinement: every pair of self is a pair of other"""
        self._require_same_size(other)
        return all(other.labels[i] == other.labels[label] for i, label in enumerate(self.labels))

    def meet(self, other: "Partition") -> "Partition":
        self._require_same_size(other)
        return Partition.from_labels(
            [a * (self.size + 1) + b for a, b in zip(self.labels, other.labels)]
        )

    def join(self, other: "Partition") -> "Partition":
        """Join in the lattice of equivalence relations"""
        self._require_same_size(other)
        return Partition.from_pairs(
            self.size, list(zip(self.labels, range(self.size)))
            + list(zip(other.labels, range(self.size)))
        )

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Finer partitions first, then labels"""
        return (-self.num_blocks, self.labels)

    def _require_same_size(self, other: "Partition") -> None:
        if self.size != other.size:
            raise ValidationError(
                f"Partitions on different universes ({self.size} vs {other.size})"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition('{format_partition(self)}')"


def format_partition(partition: Partition) -> str:
    """Bar-separated blocks, e.g. ``02|13``; commas inside blocks when n > 10"""
    sep = "" if partition.size <= 10 else ","
    return "|".join(sep.join(str(a) for a in block) for block in partition.blocks())


_IDENTITY_WORDS = {"0", "identity", "zero", "bottom"}
_TOTAL_WORDS = {"1", "total", "one", "top"}


def parse_partition(text: str, n: int) -> Partition:
    """Parse a partition given on the command line or in a file.

    Accepts the keywords ``0``/``identity`` and ``1``/``total``, bar strings
    such as ``02|13`` (``0,2|1,3`` for larger universes; omitted elements are
    singletons) and JSON label arrays, which are normalized.
    """
    text = text.strip()
    lowered = text.lower()
    if lowered in _IDENTITY_WORDS and not (n == 1 and lowered == "0"):
        return Partition.identity(n)
    if lowered in _TOTAL_WORDS:
        return Partition.total(n)
    if text.startswith("["):
        try:
            labels = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"Invalid partition JSON: {exc}") from exc
        return partition_from_json(labels, n)
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "," in chunk or n > 10:
            items = [c for c in chunk.split(",") if c.strip()]
        else:
            items = list(chunk)
        try:
            blocks.append([int(item) for item in items])
        except ValueError as exc:
            raise ValidationError(f"Invalid partition '{text}'") from exc
    return Partition.from_blocks(n, blocks)


def partition_from_json(labels: Sequence[int], n: Optional[int] = None) -> Partition:
    """Partition from a JSON label array; non-canonical input is normalized with a warning"""
    if n is not None and len(labels) != n:
        raise ValidationError(f"Partition has {len(labels)} labels, expected {n}")
    partition = Partition.from_labels(labels)
    if tuple(labels) != partition.labels:
        logger.warning("partition normalized", given=list(labels), canonical=list(partition.labels))
    return partition

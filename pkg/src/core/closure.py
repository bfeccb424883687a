"""Subuniverse generation in finite products"""

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..monitoring.metrics import METRICS, MetricsManager
from ..utils.errors import CapExceededError, ValidationError
from ..utils.logging import get_logger
from .algebra import FiniteAlgebra, decode_mixed_radix, mixed_radix_weights, require_shared_signature
from .terms import App, Term, Var

logger = get_logger(__name__)

# Codes are int64; leave headroom for the encode dot product
_MAX_ENCODABLE = 1 << 62
# Products up to this many tuples use a membership bitmap instead of sorted lookups
_BITMAP_LIMIT = 1 << 26
_HASH_SEED = 0x5EED

StopPredicate = Callable[[np.ndarray], np.ndarray]


def _product_size(sizes: Sequence[int]) -> int:
    total = 1
    for s in sizes:
        total *= int(s)
    return total


class RowCodec:
    """Mixed-radix codes for tuples of a product, first coordinate most significant"""

    def __init__(self, sizes: Sequence[int]):
        self.sizes = tuple(int(s) for s in sizes)
        if not self.sizes:
            raise ValidationError("A product needs at least one component")
        total = _product_size(self.sizes)
        if total >= _MAX_ENCODABLE:
            raise CapExceededError(
                "Product too large to encode tuples as 64-bit codes",
                {"sizes": list(self.sizes)},
            )
        self.total = total
        self.weights = mixed_radix_weights(self.sizes)

    @staticmethod
    def fits(sizes: Sequence[int]) -> bool:
        return _product_size(sizes) < _MAX_ENCODABLE

    def encode(self, rows: np.ndarray) -> np.ndarray:
        return np.asarray(rows, dtype=np.int64) @ self.weights

    def encode_one(self, values: Sequence[int]) -> int:
        _check_row(values, self.sizes)
        return int(np.dot(np.asarray(values, dtype=np.int64), self.weights))

    def decode(self, codes: np.ndarray) -> np.ndarray:
        return decode_mixed_radix(np.asarray(codes, dtype=np.int64), self.sizes)


def _check_row(values: Sequence[int], sizes: Sequence[int]) -> None:
    if len(values) != len(sizes):
        raise ValidationError(f"Tuple has length {len(values)}, expected {len(sizes)}")
    for value, size in zip(values, sizes):
        if not 0 <= value < size:
            raise ValidationError(f"Tuple entry {value} outside component of size {size}")


def _row_key(row: Sequence[int]) -> bytes:
    return np.asarray(row, dtype=np.int64).tobytes()


class TupleSet:
    """Immutable set of tuples of a product, stored as lexicographically sorted rows"""

    def __init__(self, component_sizes: Sequence[int], codes: Iterable[int]):
        codec = RowCodec(component_sizes)
        if isinstance(codes, np.ndarray):
            raw = codes.astype(np.int64)
        else:
            raw = np.fromiter((int(c) for c in codes), dtype=np.int64)
        self._init(codec.sizes, codec.decode(np.unique(raw)))

    def _init(self, sizes: Tuple[int, ...], rows: np.ndarray) -> None:
        rows.setflags(write=False)
        self.component_sizes = sizes
        self._rows = rows
        self._keys: Optional[FrozenSet[bytes]] = None

    @classmethod
    def from_rows(cls, component_sizes: Sequence[int], rows: np.ndarray) -> "TupleSet":
        sizes = tuple(int(s) for s in component_sizes)
        if not sizes:
            raise ValidationError("A product needs at least one component")
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, len(sizes))
        if rows.shape[0]:
            if (rows < 0).any() or (rows >= np.asarray(sizes)[None, :]).any():
                raise ValidationError("Tuple entries outside their components")
            rows = np.unique(rows, axis=0)
        result = cls.__new__(cls)
        result._init(sizes, rows)
        return result

    @classmethod
    def from_tuples(cls, component_sizes: Sequence[int], tuples: Iterable[Sequence[int]]
                    ) -> "TupleSet":
        rows = []
        for t in tuples:
            _check_row(t, component_sizes)
            rows.append(tuple(t))
        return cls.from_rows(component_sizes, np.asarray(rows, dtype=np.int64))

    @property
    def keys(self) -> FrozenSet[bytes]:
        if self._keys is None:
            self._keys = frozenset(row.tobytes() for row in self._rows)
        return self._keys

    @property
    def tuples(self) -> frozenset:
        return frozenset(self)

    def rows(self) -> np.ndarray:
        """Members as a (len x width) array in lexicographic order"""
        return self._rows

    def __len__(self) -> int:
        return int(self._rows.shape[0])

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        for row in self._rows:
            yield tuple(int(v) for v in row)

    def __contains__(self, item: object) -> bool:
        if not isinstance(item, (tuple, list)) or len(item) != len(self.component_sizes):
            return False
        if any(not 0 <= v < s for v, s in zip(item, self.component_sizes)):
            return False
        return _row_key(item) in self.keys

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TupleSet):
            return NotImplemented
        return (self.component_sizes == other.component_sizes
                and np.array_equal(self._rows, other._rows))

    def __hash__(self) -> int:
        return hash((self.component_sizes, self._rows.tobytes()))

    def issubset(self, other: "TupleSet") -> bool:
        self._require_compatible(other)
        return self.keys <= other.keys

    def intersection(self, other: "TupleSet") -> "TupleSet":
        self._require_compatible(other)
        mask = np.array([row.tobytes() in other.keys for row in self._rows], dtype=bool)
        return TupleSet.from_rows(self.component_sizes, self._rows[mask])

    def project(self, indices: Sequence[int]) -> "TupleSet":
        """Projection onto the given coordinates, in the given order"""
        sizes = [self.component_sizes[i] for i in indices]
        return TupleSet.from_rows(sizes, self._rows[:, list(indices)])

    def _require_compatible(self, other: "TupleSet") -> None:
        if self.component_sizes != other.component_sizes:
            raise ValidationError("Tuple sets live in different products")

    def __repr__(self) -> str:
        return f"TupleSet(sizes={list(self.component_sizes)}, count={len(self)})"


@dataclass
class ClosureRun:
    """Outcome of a closure.

    Members are numbered in discovery order; the first ``generators`` of them
    are the distinct generators in the order given. ``provenance`` maps a
    member number to the symbol and argument numbers that first produced it.
    ``evaluations`` counts the argument tuples the operations were applied to.
    """
    members: TupleSet
    discovered: np.ndarray
    generators: int
    provenance: Dict[int, Tuple[str, Tuple[int, ...]]] = field(default_factory=dict)
    hit: Optional[int] = None
    rounds: int = 0
    evaluations: int = 0

    def row(self, index: int) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.discovered[index])


class _Store:
    """Growable row storage"""

    def __init__(self, width: int):
        self.rows = np.zeros((64, width), dtype=np.int64)
        self.count = 0

    def extend(self, rows: np.ndarray) -> None:
        needed = self.count + rows.shape[0]
        if needed > self.rows.shape[0]:
            capacity = max(needed, 2 * self.rows.shape[0])
            grown = np.zeros((capacity, self.rows.shape[1]), dtype=np.int64)
            grown[: self.count] = self.rows[: self.count]
            self.rows = grown
        self.rows[self.count:needed] = rows
        self.count = needed


class _Membership:
    """Seen-set over rows.

    Encodable products use a bitmap or sorted codes. Wider rows are keyed by a
    64-bit hash with the rows kept alongside, so equal hashes are confirmed by
    comparing rows; a collision between distinct rows falls back to exact keys.
    """

    def __init__(self, sizes: Sequence[int]):
        self._codec = RowCodec(sizes) if RowCodec.fits(sizes) else None
        self._bitmap: Optional[np.ndarray] = None
        self._sorted = np.zeros(0, dtype=np.int64)
        if self._codec is not None and self._codec.total <= _BITMAP_LIMIT:
            self._bitmap = np.zeros(self._codec.total, dtype=bool)
        if self._codec is None:
            rng = np.random.default_rng(_HASH_SEED)
            self._weights = rng.integers(1, 1 << 62, size=len(sizes), dtype=np.int64) | 1
            self._hashes = np.zeros(0, dtype=np.int64)
            self._slots = np.zeros(0, dtype=np.int64)
            self._store = _Store(len(sizes))

    def _hash(self, rows: np.ndarray) -> np.ndarray:
        # int64 arithmetic wraps silently for arrays
        return np.asarray(rows, dtype=np.int64) @ self._weights

    def fresh(self, rows: np.ndarray) -> np.ndarray:
        """Positions of the first occurrences of unseen rows, in lexicographic row order"""
        if rows.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        if self._codec is None:
            return self._fresh_wide(rows)
        codes, first = np.unique(self._codec.encode(rows), return_index=True)
        if self._bitmap is not None:
            missing = ~self._bitmap[codes]
        else:
            missing = ~np.isin(codes, self._sorted)
        return first[missing]

    def _fresh_wide(self, rows: np.ndarray) -> np.ndarray:
        hashes, first, inverse = np.unique(self._hash(rows), return_index=True,
                                           return_inverse=True)
        if (rows != rows[first[inverse.ravel()]]).any():
            return self._fresh_exact(rows)
        pos = np.searchsorted(self._hashes, hashes)
        known = pos < self._hashes.size
        known[known] = self._hashes[pos[known]] == hashes[known]
        if known.any():
            stored = self._store.rows[self._slots[pos[known]]]
            if (stored != rows[first[known]]).any():
                return self._fresh_exact(rows)
        where = first[~known]
        return where[np.lexsort(rows[where].T[::-1])]

    def _fresh_exact(self, rows: np.ndarray) -> np.ndarray:
        logger.debug("row hash collision", rows=int(rows.shape[0]))
        seen = {row.tobytes() for row in self._store.rows[: self._store.count]}
        _, first = np.unique(rows, axis=0, return_index=True)
        return np.asarray([i for i in first.tolist() if rows[i].tobytes() not in seen],
                          dtype=np.int64)

    def add(self, rows: np.ndarray) -> None:
        if self._codec is None:
            start = self._store.count
            self._store.extend(rows)
            hashes = np.concatenate([self._hashes, self._hash(rows)])
            slots = np.concatenate([self._slots, np.arange(start, self._store.count)])
            order = np.argsort(hashes, kind="stable")
            self._hashes, self._slots = hashes[order], slots[order]
            return
        codes = self._codec.encode(rows)
        if self._bitmap is not None:
            self._bitmap[codes] = True
        else:
            self._sorted = np.union1d(self._sorted, codes)


def close(
    components: Sequence[FiniteAlgebra],
    generators: Iterable[Sequence[int]],
    cap: Optional[int] = None,
    *,
    limits: Optional[Limits] = None,
    track: bool = False,
    stop: Optional[StopPredicate] = None,
    metrics: Optional[MetricsManager] = None,
) -> ClosureRun:
    """Semi-naive worklist closure under all basic operations, applied coordinatewise.

    Each round applies every operation to the argument tuples that use at least
    one member found in the previous round, so every tuple of arguments is
    evaluated once. Argument tuples are enumerated in blocks to bound memory.

    Args:
        components: Factors of the product; they must share a signature
        generators: Tuples to close
        cap: Maximum number of members (defaults to the configured closure cap)
        limits: Guardrails
        track: Record, for each new member, the symbol and argument numbers
            that first produced it
        stop: Predicate over a batch of new rows; the closure stops at the first
            batch where it holds for some row and records that member as ``hit``
        metrics: Where closure sizes are recorded

    Returns:
        The closure run

    Raises:
        CapExceededError: If the closure grows beyond the cap, or the argument
            tuples to evaluate exceed the configured work cap
    """
    limits = limits or DEFAULT_LIMITS
    cap = limits.closure_cap if cap is None else cap
    metrics = metrics or METRICS
    signature = require_shared_signature(components)
    sizes = [alg.size for alg in components]
    width = len(components)

    gen_rows = np.asarray([tuple(g) for g in generators], dtype=np.int64).reshape(-1, width)
    for g in gen_rows:
        _check_row(g.tolist(), sizes)
    seen = _Membership(sizes)
    gen_rows = gen_rows[np.sort(seen.fresh(gen_rows))]
    if gen_rows.shape[0] > cap:
        raise CapExceededError(f"More than {cap} generators", {"cap": cap})

    store = _Store(width)
    store.extend(gen_rows)
    seen.add(gen_rows)
    run = ClosureRun(members=TupleSet.from_rows(sizes, gen_rows), discovered=gen_rows,
                     generators=int(gen_rows.shape[0]))

    def finish() -> ClosureRun:
        run.discovered = store.rows[: store.count].copy()
        run.members = TupleSet.from_rows(sizes, run.discovered)
        return run

    if stop is not None and gen_rows.size:
        hits = np.flatnonzero(stop(gen_rows))
        if hits.size:
            run.hit = int(hits[0])
            return finish()

    tables = []
    for symbol, arity in signature:
        flat = np.concatenate([alg.table(symbol) for alg in components])
        offsets = np.zeros(width, dtype=np.int64)
        size_array = np.array(sizes, dtype=np.int64)
        running = 0
        for j, alg in enumerate(components):
            offsets[j] = running
            running += alg.size ** arity
        radix = np.stack([size_array ** (arity - 1 - q) for q in range(arity)])
        tables.append((symbol, arity, flat, offsets, radix))

    frontier_start, frontier_end = 0, store.count
    rows_per_block = max(1, limits.block_size // max(1, width * signature.max_arity))

    while frontier_start < frontier_end:
        run.rounds += 1
        for symbol, arity, flat, offsets, radix in tables:
            for p in range(arity):
                lengths = ([frontier_start] * p + [frontier_end - frontier_start]
                           + [frontier_end] * (arity - p - 1))
                starts = [0] * p + [frontier_start] + [0] * (arity - p - 1)
                combos = _product_size(lengths)
                if combos == 0:
                    continue
                run.evaluations += combos
                if run.evaluations > limits.work_cap:
                    raise CapExceededError(
                        f"Closure needs more than {limits.work_cap} operation evaluations",
                        {"work_cap": limits.work_cap, "members": store.count,
                         "components": sizes},
                    )
                for block_start in range(0, combos, rows_per_block):
                    block = np.arange(block_start, min(combos, block_start + rows_per_block),
                                      dtype=np.int64)
                    picks = np.unravel_index(block, lengths)
                    arg_index = [picks[q] + starts[q] for q in range(arity)]
                    cells = offsets[None, :].repeat(block.size, axis=0)
                    for q in range(arity):
                        cells = cells + store.rows[arg_index[q]] * radix[q][None, :]
                    result = flat[cells]
                    where = seen.fresh(result)
                    if where.size == 0:
                        continue
                    new_rows = result[where]
                    if track:
                        for offset, w in enumerate(where.tolist()):
                            run.provenance[store.count + offset] = (
                                symbol,
                                tuple(int(arg_index[q][w]) for q in range(arity)),
                            )
                    first_new = store.count
                    store.extend(new_rows)
                    seen.add(new_rows)
                    if store.count > cap:
                        raise CapExceededError(
                            f"Closure exceeded {cap} tuples",
                            {"cap": cap, "components": sizes},
                        )
                    if stop is not None:
                        hits = np.flatnonzero(stop(new_rows))
                        if hits.size:
                            run.hit = first_new + int(hits[0])
                            return finish()
        frontier_start, frontier_end = frontier_end, store.count

    finish()
    metrics.record_metric("closure.size", float(store.count))
    logger.debug("closure complete", size=store.count, rounds=run.rounds, width=width)
    return run


def generate_subuniverse(
    components: Sequence[FiniteAlgebra],
    generators: Iterable[Sequence[int]],
    cap: Optional[int] = None,
    *,
    limits: Optional[Limits] = None,
    require_nonempty: bool = False,
) -> TupleSet:
    """Least subuniverse of the product containing the generators"""
    generators = [tuple(int(v) for v in g) for g in generators]
    if require_nonempty and not generators:
        raise ValidationError("At least one generator is required")
    return close(components, generators, cap, limits=limits).members


def closure_contains(
    components: Sequence[FiniteAlgebra],
    generators: Iterable[Sequence[int]],
    target: Sequence[int],
    cap: Optional[int] = None,
    *,
    limits: Optional[Limits] = None,
) -> bool:
    """Membership test that stops as soon as the target is produced"""
    _check_row(target, [alg.size for alg in components])
    wanted = np.asarray(target, dtype=np.int64)[None, :]
    run = close(
        components,
        generators,
        cap,
        limits=limits,
        stop=lambda rows: (rows == wanted).all(axis=1),
    )
    return run.hit is not None


def derivation_terms(run: ClosureRun) -> Callable[[int], Term]:
    """Map member numbers to terms over the generators (x_i is the i-th generator)"""
    cache: Dict[int, Term] = {i: Var(i) for i in range(run.generators)}

    def build(index: int) -> Term:
        stack: List[int] = [index]
        while stack:
            current = stack[-1]
            if current in cache:
                stack.pop()
                continue
            if current not in run.provenance:
                raise ValidationError(f"No derivation recorded for member {current}")
            symbol, args = run.provenance[current]
            pending = [a for a in args if a not in cache]
            if pending:
                stack.extend(pending)
                continue
            cache[current] = App(symbol, tuple(cache[a] for a in args))
            stack.pop()
        return cache[index]

    return build

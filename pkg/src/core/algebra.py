"""Finite algebras as flat operation tables"""

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..utils.errors import CapExceededError, SignatureError, ValidationError


@dataclass(frozen=True)
class Signature:
    """Ordered operation symbols with their arities"""
    symbols: Tuple[Tuple[str, int], ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.symbols]
        if len(set(names)) != len(names):
            raise SignatureError("Operation symbols must be unique", {"symbols": names})
        for name, arity in self.symbols:
            if arity == 0:
                raise SignatureError(
                    f"Nullary symbol '{name}' is not supported; encode it as a unary "
                    "constant operation instead",
                    {"symbol": name},
                )
            if arity < 0:
                raise SignatureError(f"Negative arity for '{name}'", {"symbol": name})

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    @property
    def max_arity(self) -> int:
        return max((arity for _, arity in self.symbols), default=0)

    def arity(self, name: str) -> int:
        for symbol, arity in self.symbols:
            if symbol == name:
                return arity
        raise SignatureError(f"Unknown operation symbol '{name}'", {"symbol": name})

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __iter__(self) -> Iterator[Tuple[str, int]]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True, eq=False)
class Operation:
    """One basic operation; table index of (a1..ak) is sum a_j * n^(k-j)"""
    symbol: str
    arity: int
    table: np.ndarray

    def __post_init__(self) -> None:
        table = np.ascontiguousarray(self.table, dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "cells", tuple(int(v) for v in table))

    def view(self, size: int) -> np.ndarray:
        """Table reshaped so that view[a1, ..., ak] is the value"""
        return self.table.reshape((size,) * self.arity)


class FiniteAlgebra:
    """Algebra on {0..n-1} given by one flat table per symbol.

    Instances are immutable and hash by content (size, signature and tables);
    the name is informational only.
    """

    def __init__(self, size: int, operations: Sequence[Operation], name: str = ""):
        if size < 1:
            raise ValidationError("Algebra size must be at least 1", {"size": size})
        self.size = int(size)
        self.name = name
        self.operations: Tuple[Operation, ...] = tuple(operations)
        self.signature = Signature(tuple((op.symbol, op.arity) for op in self.operations))
        self._by_symbol: Dict[str, Operation] = {op.symbol: op for op in self.operations}
        for op in self.operations:
            expected = self.size ** op.arity
            if op.table.shape != (expected,):
                raise ValidationError(
                    f"Table of '{op.symbol}' has length {op.table.size}, expected {expected}",
                    {"symbol": op.symbol},
                )
            if op.table.size and (op.table.min() < 0 or op.table.max() >= self.size):
                raise ValidationError(
                    f"Table of '{op.symbol}' has entries outside 0..{self.size - 1}",
                    {"symbol": op.symbol},
                )
        self._key = (
            self.size,
            self.signature.symbols,
            tuple(op.table.tobytes() for op in self.operations),
        )

    @classmethod
    def from_tables(
        cls,
        size: int,
        tables: Iterable[Tuple[str, int, Sequence[int]]],
        name: str = "",
    ) -> "FiniteAlgebra":
        """Build from (symbol, arity, flat table) triples"""
        return cls(
            size,
            [Operation(symbol, arity, np.asarray(table)) for symbol, arity, table in tables],
            name=name,
        )

    @classmethod
    def from_functions(
        cls,
        size: int,
        functions: Iterable[Tuple[str, int, Callable[..., int]]],
        name: str = "",
    ) -> "FiniteAlgebra":
        """Build by evaluating Python callables on every argument tuple"""
        tables = []
        for symbol, arity, fn in functions:
            values = [fn(*args) for args in itertools.product(range(size), repeat=arity)]
            tables.append((symbol, arity, values))
        return cls.from_tables(size, tables, name=name)

    def op(self, symbol: str) -> Operation:
        try:
            return self._by_symbol[symbol]
        except KeyError:
            raise SignatureError(
                f"Unknown operation symbol '{symbol}'", {"symbol": symbol, "algebra": self.name}
            ) from None

    def table(self, symbol: str) -> np.ndarray:
        return self.op(symbol).table

    def apply(self, symbol: str, args: Sequence[int]) -> int:
        """Value of one operation on one argument tuple"""
        op = self.op(symbol)
        if len(args) != op.arity:
            raise SignatureError(
                f"'{symbol}' expects {op.arity} arguments, got {len(args)}", {"symbol": symbol}
            )
        index = 0
        for a in args:
            if not 0 <= a < self.size:
                raise ValidationError(f"Element {a} outside universe of size {self.size}")
            index = index * self.size + a
        return op.cells[index]  # type: ignore[attr-defined, no-any-return]

    @property
    def elements(self) -> range:
        return range(self.size)

    def with_table(self, symbol: str, table: Sequence[int]) -> "FiniteAlgebra":
        """Copy with one table replaced"""
        self.op(symbol)
        ops = [
            Operation(op.symbol, op.arity, np.asarray(table)) if op.symbol == symbol else op
            for op in self.operations
        ]
        return FiniteAlgebra(self.size, ops, name=self.name)

    def renamed(self, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(self.size, self.operations, name=name)

    def same_signature(self, other: "FiniteAlgebra") -> bool:
        return self.signature == other.signature

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        ops = ", ".join(f"{s}/{a}" for s, a in self.signature)
        return f"FiniteAlgebra({self.name or '?'}, size={self.size}, [{ops}])"


def require_shared_signature(algs: Sequence[FiniteAlgebra]) -> Signature:
    """Return the common signature or raise SignatureError"""
    if not algs:
        raise ValidationError("At least one algebra is required")
    signature = algs[0].signature
    for alg in algs[1:]:
        if alg.signature != signature:
            raise SignatureError(
                "Algebras do not share a signature",
                {"expected": list(signature.names), "found": list(alg.signature.names)},
            )
    return signature


def mixed_radix_weights(sizes: Sequence[int]) -> np.ndarray:
    """Weights of a first-coordinate-most-significant encoding"""
    weights = np.ones(len(sizes), dtype=np.int64)
    for i in range(len(sizes) - 2, -1, -1):
        weights[i] = weights[i + 1] * sizes[i + 1]
    return weights


def decode_mixed_radix(codes: np.ndarray, sizes: Sequence[int]) -> np.ndarray:
    """Rows of digits for each code"""
    weights = mixed_radix_weights(sizes)
    codes = np.asarray(codes, dtype=np.int64)
    return (codes[:, None] // weights[None, :]) % np.asarray(sizes, dtype=np.int64)[None, :]


def product(algs: Sequence[FiniteAlgebra], limits: Optional[Limits] = None) -> FiniteAlgebra:
    """Direct product on mixed-radix encoded tuples"""
    limits = limits or DEFAULT_LIMITS
    signature = require_shared_signature(algs)
    sizes = [alg.size for alg in algs]
    total = int(np.prod(sizes, dtype=object))
    if total > limits.product_cap:
        raise CapExceededError(
            f"Product of size {total} exceeds product cap {limits.product_cap}",
            {"sizes": sizes},
        )
    digits = decode_mixed_radix(np.arange(total, dtype=np.int64), sizes)
    weights = mixed_radix_weights(sizes)
    ops: List[Operation] = []
    for symbol, arity in signature:
        if total ** arity > limits.closure_cap:
            raise CapExceededError(
                f"Table of '{symbol}' on the product would have {total ** arity} cells",
                {"symbol": symbol},
            )
        grid = np.indices((total,) * arity).reshape(arity, -1)
        codes = np.zeros(grid.shape[1], dtype=np.int64)
        for j, alg in enumerate(algs):
            n = alg.size
            index = np.zeros(grid.shape[1], dtype=np.int64)
            for q in range(arity):
                index = index * n + digits[grid[q], j]
            codes += alg.table(symbol)[index] * weights[j]
        ops.append(Operation(symbol, arity, codes))
    name = " x ".join(alg.name or "?" for alg in algs)
    return FiniteAlgebra(total, ops, name=name)


def subalgebra(alg: FiniteAlgebra, subset: Iterable[int]) -> Tuple[FiniteAlgebra, Tuple[int, ...]]:
    """Subalgebra on a subuniverse, renumbered ascending.

    Returns:
        The subalgebra and the embedding (new index -> old element)

    Raises:
        ValidationError: If the subset is empty or not closed under the operations
    """
    elements = np.array(sorted(set(int(a) for a in subset)), dtype=np.int64)
    if elements.size == 0:
        raise ValidationError("Subalgebras must be nonempty")
    position = np.full(alg.size, -1, dtype=np.int64)
    position[elements] = np.arange(elements.size)
    m = elements.size
    ops = []
    for op in alg.operations:
        grid = np.indices((m,) * op.arity).reshape(op.arity, -1)
        index = np.zeros(grid.shape[1], dtype=np.int64)
        for q in range(op.arity):
            index = index * alg.size + elements[grid[q]]
        values = position[op.table[index]]
        if (values < 0).any():
            raise ValidationError(
                f"Subset is not closed under '{op.symbol}'",
                {"subset": elements.tolist()},
            )
        ops.append(Operation(op.symbol, op.arity, values))
    name = f"{alg.name}[{','.join(str(a) for a in elements)}]"
    return FiniteAlgebra(m, ops, name=name), tuple(int(a) for a in elements)


def close_subset(alg: FiniteAlgebra, subset: Iterable[int]) -> frozenset:
    """Subuniverse of a single algebra generated by a set of elements"""
    current = set(int(a) for a in subset)
    frontier = set(current)
    n = alg.size
    while frontier:
        found = set()
        known = sorted(current)
        for op in alg.operations:
            cells = op.cells  # type: ignore[attr-defined]
            for args in itertools.product(known, repeat=op.arity):
                if frontier.isdisjoint(args):
                    continue
                index = 0
                for a in args:
                    index = index * n + a
                value = cells[index]
                if value not in current:
                    found.add(value)
        current |= found
        frontier = found
    return frozenset(current)

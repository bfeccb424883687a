"""Algebras built from congruences: the diagonal operation and sorted operations"""

import itertools
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..core.algebra import FiniteAlgebra, Operation, decode_mixed_radix, mixed_radix_weights
from ..core.homomorphism import SortedHom
from ..utils.errors import CapExceededError, SignatureError, ValidationError
from ..utils.logging import computation_context, get_logger

logger = get_logger(__name__)

DIAGONAL = "d"
_HAT = re.compile(r"^(?P<symbol>.+)\^<(?P<sorts>\d+(?:,\d+)*)>$")


def hat_symbol(symbol: str, sorts: Sequence[int]) -> str:
    """Name of the sorted operation for a base symbol and input sorts"""
    return f"{symbol}^<{','.join(str(i) for i in sorts)}>"


def parse_hat_symbol(name: str) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """Inverse of hat_symbol; None for names of another shape"""
    match = _HAT.match(name)
    if not match:
        return None
    return match.group("symbol"), tuple(int(v) for v in match.group("sorts").split(","))


@dataclass(frozen=True)
class HatInfo:
    """Base symbol, input sorts and output sort of a sorted operation"""
    base_symbol: str
    sorts: Tuple[int, ...]
    output_sort: int


@dataclass(frozen=True, eq=False)
class ConstructedAlgebra:
    """The constructed algebra on D^(0) x ... x D^(m-1) with its decoding data.

    Elements are columns (a^(0), ..., a^(m-1)) with a^(i) in D^(i), encoded
    in mixed radix over the positions of the entries in their sorted sorts,
    first sort most significant.
    """
    base: FiniteAlgebra
    chi: SortedHom
    sort_elements: Tuple[Tuple[int, ...], ...]
    algebra: FiniteAlgebra

    @property
    def m(self) -> int:
        return len(self.sort_elements)

    @property
    def index_algebra(self) -> FiniteAlgebra:
        return self.chi.codomain

    @property
    def sort_sizes(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.sort_elements)

    @property
    def size(self) -> int:
        return self.algebra.size

    @property
    def weights(self) -> np.ndarray:
        return mixed_radix_weights(self.sort_sizes)

    @property
    def positions(self) -> np.ndarray:
        """position[a] = index of a within its sort"""
        position = np.zeros(self.base.size, dtype=np.int64)
        for elements in self.sort_elements:
            position[list(elements)] = np.arange(len(elements))
        return position

    def encode(self, column: Sequence[int]) -> int:
        if len(column) != self.m:
            raise ValidationError(f"A column has {self.m} entries, got {len(column)}")
        code = 0
        for i, (a, elements) in enumerate(zip(column, self.sort_elements)):
            if a not in elements:
                raise ValidationError(
                    f"Entry {a} of column {list(column)} is not in sort {i}",
                    {"sort": i, "elements": list(elements)},
                )
            code = code * len(elements) + elements.index(a)
        return code

    def decode(self, code: int) -> Tuple[int, ...]:
        if not 0 <= code < self.size:
            raise ValidationError(f"Element {code} outside carrier of size {self.size}")
        return tuple(int(v) for v in self.columns()[code])

    def encode_columns(self, columns: np.ndarray) -> np.ndarray:
        """Vectorized encode of an (N x m) array of base elements"""
        return self.positions[np.asarray(columns, dtype=np.int64)] @ self.weights

    def columns(self) -> np.ndarray:
        """Base-element entries of every carrier element, shape (size, m)"""
        digits = decode_mixed_radix(np.arange(self.size, dtype=np.int64), self.sort_sizes)
        result = np.zeros_like(digits)
        for i, elements in enumerate(self.sort_elements):
            result[:, i] = np.asarray(elements, dtype=np.int64)[digits[:, i]]
        return result

    def hat_info(self) -> Dict[str, HatInfo]:
        """Sorted operations keyed by symbol"""
        info = {}
        index_alg = self.index_algebra
        for op in self.algebra.operations:
            parsed = parse_hat_symbol(op.symbol)
            if parsed is None:
                continue
            base_symbol, sorts = parsed
            info[op.symbol] = HatInfo(base_symbol, sorts, index_alg.apply(base_symbol, sorts))
        return info

    def with_algebra(self, algebra: FiniteAlgebra) -> "ConstructedAlgebra":
        """Same decoding data over other tables of the same shape"""
        if algebra.size != self.size or algebra.signature != self.algebra.signature:
            raise SignatureError(
                "Tables do not match the constructed signature",
                {"expected": list(self.algebra.signature.names)},
            )
        return ConstructedAlgebra(self.base, self.chi, self.sort_elements, algebra)

    def __repr__(self) -> str:
        return f"ConstructedAlgebra({self.algebra.name}, sorts={list(self.sort_sizes)})"


def constructed_signature(base: FiniteAlgebra, m: int) -> List[Tuple[str, int]]:
    """d first, then each base symbol with its sort tuples in lexicographic order"""
    symbols = [(DIAGONAL, m)]
    for symbol, arity in base.signature:
        for sorts in itertools.product(range(m), repeat=arity):
            symbols.append((hat_symbol(symbol, sorts), arity))
    return symbols


def construct_c(
    base: FiniteAlgebra,
    chi: SortedHom,
    limits: Optional[Limits] = None,
) -> ConstructedAlgebra:
    """Build the constructed algebra of (base, chi).

    d returns the diagonal of an m x m matrix of columns. The sorted
    operation f^<i1..ik> returns its first argument column with entry
    f(i1..ik) (evaluated in the index algebra) replaced by f applied to
    entry i1 of column 1, ..., entry ik of column k.
    """
    limits = limits or DEFAULT_LIMITS
    if chi.domain != base:
        raise ValidationError("The sorted homomorphism is defined on another algebra")
    sort_elements = chi.classes()
    m = len(sort_elements)
    sizes = [len(s) for s in sort_elements]
    total = int(np.prod(sizes, dtype=object))
    if total > limits.product_cap:
        raise CapExceededError(
            f"Constructed carrier of size {total} exceeds product cap {limits.product_cap}",
            {"sort_sizes": sizes},
        )
    with computation_context("construct", base=base.name, m=m, size=total):
        shell = ConstructedAlgebra(base, chi, sort_elements, base)
        columns = shell.columns()
        position = shell.positions
        weights = shell.weights
        index_alg = chi.codomain

        def encode(cols: np.ndarray) -> np.ndarray:
            return position[cols] @ weights

        ops: List[Operation] = []
        for symbol, arity in constructed_signature(base, m):
            cells = total ** arity
            if cells > limits.closure_cap:
                raise CapExceededError(
                    f"Table of '{symbol}' would have {cells} cells",
                    {"symbol": symbol, "size": total},
                )
            args = decode_mixed_radix(np.arange(cells, dtype=np.int64), [total] * arity)
            if symbol == DIAGONAL:
                out = np.stack([columns[args[:, i], i] for i in range(m)], axis=1)
            else:
                base_symbol, sorts = parse_hat_symbol(symbol)  # type: ignore[misc]
                output_sort = index_alg.apply(base_symbol, sorts)
                index = np.zeros(cells, dtype=np.int64)
                for j, i in enumerate(sorts):
                    index = index * base.size + columns[args[:, j], i]
                out = columns[args[:, 0]].copy()
                out[:, output_sort] = base.table(base_symbol)[index]
            ops.append(Operation(symbol, arity, encode(out)))
        chi_text = ",".join(str(v) for v in chi.labels)
        algebra = FiniteAlgebra(total, ops, name=f"C({base.name};{chi_text})")
    logger.debug("constructed algebra", base=base.name, sorts=sizes, operations=len(ops))
    return ConstructedAlgebra(base, chi, sort_elements, algebra)

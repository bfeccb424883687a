"""Validator for the identities defining diagonal algebras"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..core.algebra import FiniteAlgebra
from ..utils.errors import CapExceededError
from ..utils.logging import get_logger
from .constructed import DIAGONAL, ConstructedAlgebra

logger = get_logger(__name__)

IDEMPOTENT = "diagonal-idempotent"
SQUARE = "diagonal-square"
OUTPUT_SORT = "hat-output-sort"
OTHER_SORTS = "hat-other-sorts"


@dataclass
class IdentityViolation:
    """First point where one of the identities fails"""
    identity: str
    symbol: str
    point: List[int]
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"identity": self.identity, "symbol": self.symbol, "point": self.point,
                **self.details}


def _points(variables: int, size: int, block: int) -> Iterator[np.ndarray]:
    """Blocks of assignments to `variables` variables, shape (variables, rows)"""
    total = size ** variables
    for start in range(0, total, block):
        flat = np.arange(start, min(total, start + block), dtype=np.int64)
        digits = np.empty((variables, flat.size), dtype=np.int64)
        for v in range(variables - 1, -1, -1):
            digits[v] = flat % size
            flat //= size
        yield digits


def _apply(alg: FiniteAlgebra, symbol: str, args: List[np.ndarray]) -> np.ndarray:
    index = np.zeros(args[0].shape, dtype=np.int64)
    for a in args:
        index = index * alg.size + a
    return alg.table(symbol)[index]


def _d_at(alg: FiniteAlgebra, m: int, position: int, x: np.ndarray, u: np.ndarray
          ) -> np.ndarray:
    """d(u, ..., u, x, u, ..., u) with x at the given position"""
    return _apply(alg, DIAGONAL, [x if j == position else u for j in range(m)])


def find_identity_violation(
    c: ConstructedAlgebra,
    limits: Optional[Limits] = None,
) -> Optional[IdentityViolation]:
    """Exhaustively check the four identity families; first failure or None.

    - d(x, ..., x) = x
    - d(d(x_11..x_1m), ..., d(x_m1..x_mm)) = d(x_11, ..., x_mm)
    - d_o(g(x_1..x_k), y) = d_o(g(d_i1(x_1, v_1), ..., d_ik(x_k, v_k)), y),
      o the output sort and i1..ik the input sorts of g
    - d_j(g(x_1..x_k), y) = d_j(x_1, y) for every other sort j
    """
    limits = limits or DEFAULT_LIMITS
    alg = c.algebra
    n, m = alg.size, c.m
    block = limits.block_size

    def guard(variables: int, what: str) -> None:
        if n ** variables > limits.identity_cap:
            raise CapExceededError(
                f"Checking {what} needs {n ** variables} points, above {limits.identity_cap}",
                {"identity": what, "size": n},
            )

    guard(1, IDEMPOTENT)
    x = np.arange(n, dtype=np.int64)
    lhs = _apply(alg, DIAGONAL, [x] * m)
    bad = np.flatnonzero(lhs != x)
    if bad.size:
        return IdentityViolation(IDEMPOTENT, DIAGONAL, [int(bad[0])])

    guard(m * m, SQUARE)
    for digits in _points(m * m, n, block):
        rows = [_apply(alg, DIAGONAL, [digits[r * m + s] for s in range(m)]) for r in range(m)]
        lhs = _apply(alg, DIAGONAL, rows)
        rhs = _apply(alg, DIAGONAL, [digits[r * m + r] for r in range(m)])
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return IdentityViolation(SQUARE, DIAGONAL, digits[:, bad[0]].tolist())

    for symbol, info in c.hat_info().items():
        k = len(info.sorts)
        o = info.output_sort
        guard(2 * k + 1, OUTPUT_SORT)
        for digits in _points(2 * k + 1, n, block):
            xs, vs, y = digits[:k], digits[k:2 * k], digits[2 * k]
            lhs = _d_at(alg, m, o, _apply(alg, symbol, list(xs)), y)
            padded = [_d_at(alg, m, i, xs[j], vs[j]) for j, i in enumerate(info.sorts)]
            rhs = _d_at(alg, m, o, _apply(alg, symbol, padded), y)
            bad = np.flatnonzero(lhs != rhs)
            if bad.size:
                return IdentityViolation(OUTPUT_SORT, symbol, digits[:, bad[0]].tolist())
        guard(k + 1, OTHER_SORTS)
        for digits in _points(k + 1, n, block):
            xs, y = digits[:k], digits[k]
            value = _apply(alg, symbol, list(xs))
            for j in range(m):
                if j == o:
                    continue
                bad = np.flatnonzero(_d_at(alg, m, j, value, y) != _d_at(alg, m, j, xs[0], y))
                if bad.size:
                    return IdentityViolation(
                        OTHER_SORTS, symbol, digits[:, bad[0]].tolist(), {"sort": j}
                    )
    return None


def check_dalg_identities(c: ConstructedAlgebra, limits: Optional[Limits] = None) -> bool:
    """Whether the tables of c satisfy every diagonal-algebra identity"""
    violation = find_identity_violation(c, limits)
    if violation is not None:
        logger.info("identity violated", **violation.to_dict())
    return violation is None


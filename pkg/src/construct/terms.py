"""Coordinate terms and term lifting across the construction.

A k-ary term T of the constructed language acts on columns x_0..x_{k-1}. Its
coordinate terms are mk-ary base terms; variable index j*m + i stands for
entry i of column j.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Sequence

from ..core.algebra import FiniteAlgebra
from ..core.terms import App, Term, Var, eval_term, substitute, term_arity, term_operation
from ..utils.errors import SignatureError, ValidationError
from .constructed import DIAGONAL, hat_symbol, parse_hat_symbol


def coordinate_terms(term: Term, m: int, index_alg: FiniteAlgebra) -> List[Term]:
    """The m coordinate terms of a constructed-language term"""
    cache: Dict[Term, List[Term]] = {}

    def walk(t: Term) -> List[Term]:
        if t in cache:
            return cache[t]
        if isinstance(t, Var):
            result: List[Term] = [Var(t.index * m + i) for i in range(m)]
        elif t.symbol == DIAGONAL:
            if len(t.children) != m:
                raise SignatureError(
                    f"d has arity {m} but is applied to {len(t.children)} terms"
                )
            result = [walk(child)[i] for i, child in enumerate(t.children)]
        else:
            parsed = parse_hat_symbol(t.symbol)
            if parsed is None:
                raise SignatureError(
                    f"'{t.symbol}' is not a symbol of the constructed language",
                    {"symbol": t.symbol},
                )
            base_symbol, sorts = parsed
            arity = index_alg.signature.arity(base_symbol)
            if len(sorts) != arity or len(t.children) != arity:
                raise SignatureError(f"Arity mismatch for '{t.symbol}'", {"symbol": t.symbol})
            if any(i >= m for i in sorts):
                raise SignatureError(f"Sort out of range in '{t.symbol}'", {"symbol": t.symbol})
            output_sort = index_alg.apply(base_symbol, sorts)
            children = [walk(child) for child in t.children]
            result = list(children[0])
            result[output_sort] = App(
                base_symbol, tuple(children[j][i] for j, i in enumerate(sorts))
            )
        cache[t] = result
        return result

    return walk(term)


def unit_assignment(m: int, k: int) -> List[int]:
    """The m x k matrix whose i-th row is constantly i, flattened by columns"""
    return [v % m for v in range(m * k)]


def check_unit_condition(ts: Sequence[Term], m: int, k: int, index_alg: FiniteAlgebra
                         ) -> None:
    """Raise unless t^(i) evaluated at the unit matrix is i in the index algebra"""
    if len(ts) != m:
        raise ValidationError(f"Expected {m} coordinate terms, got {len(ts)}")
    env = unit_assignment(m, k)
    for i, t in enumerate(ts):
        if term_arity(t) > m * k:
            raise ValidationError(f"Coordinate term {i} uses more than {m * k} variables")
        value = eval_term(index_alg, t, env)
        if value != i:
            raise ValidationError(
                f"Coordinate term {i} evaluates to {value} at the unit matrix, expected {i}",
                {"term": i, "value": value},
            )


def _sorted_lift(s: Term, sorts: Sequence[int], index_alg: FiniteAlgebra) -> Term:
    """A term T_s whose s(sorts)-th coordinate term is s with x_v read in sort sorts[v]"""

    @lru_cache(maxsize=None)
    def walk(t: Term) -> Term:
        if isinstance(t, Var):
            return t
        children = tuple(walk(child) for child in t.children)
        child_sorts = tuple(eval_term(index_alg, child, sorts) for child in t.children)
        return App(hat_symbol(t.symbol, child_sorts), children)

    return walk(s)


def lift_term(ts: Sequence[Term], m: int, index_alg: FiniteAlgebra, k: int) -> Term:
    """A k-ary constructed-language term whose coordinate terms act as ts.

    Each t^(i) is lifted with every variable j*m + i' read in sort i', the
    variables j*m + 0 .. j*m + m-1 are collapsed to column j, and the m lifts
    are combined with d. With a single sort the lift is returned without d.
    """
    check_unit_condition(ts, m, k, index_alg)
    sorts = unit_assignment(m, k)
    collapsed = [
        substitute(_sorted_lift(t, sorts, index_alg), lambda v: Var(v // m)) for t in ts
    ]
    if m == 1:
        return collapsed[0]
    return App(DIAGONAL, tuple(collapsed))


def lift_idempotent(
    t: Term,
    k: int,
    m: int,
    index_alg: FiniteAlgebra,
    base: Optional[FiniteAlgebra] = None,
) -> Term:
    """The lift of a k-ary idempotent term, with coordinate terms t(x_0^(i), ..., x_{k-1}^(i)).

    Idempotency is checked exhaustively in the base algebra when it is given,
    otherwise in the index algebra.
    """
    if term_arity(t) > k:
        raise ValidationError(f"Term uses more than {k} variables")
    witness = base if base is not None else index_alg
    table = term_operation(witness, t, k)
    diagonal = [a * sum(witness.size ** j for j in range(k)) for a in witness.elements]
    failures = [a for a, cell in zip(witness.elements, diagonal) if table[cell] != a]
    if failures:
        where = "base algebra" if base is not None else "index algebra"
        raise ValidationError(
            f"Term is not idempotent in the {where} (fails at {failures[0]}); "
            "only idempotent terms lift to the constructed algebra",
            {"element": failures[0]},
        )
    ts = [substitute(t, lambda j, i=i: Var(j * m + i)) for i in range(m)]
    return lift_term(ts, m, index_alg, k)

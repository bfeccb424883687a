"""Finite algebras, terms and subuniverse closure"""

from .algebra import (
    FiniteAlgebra,
    Operation,
    Signature,
    close_subset,
    product,
    require_shared_signature,
    subalgebra,
)
from .closure import ClosureRun, RowCodec, TupleSet, close, closure_contains, generate_subuniverse
from .terms import App, Term, Var, eval_term, format_term, parse_term, term_operation

__all__ = [
    "App",
    "ClosureRun",
    "FiniteAlgebra",
    "Operation",
    "RowCodec",
    "Signature",
    "Term",
    "TupleSet",
    "Var",
    "close",
    "close_subset",
    "closure_contains",
    "eval_term",
    "format_term",
    "generate_subuniverse",
    "parse_term",
    "product",
    "require_shared_signature",
    "subalgebra",
    "term_operation",
]

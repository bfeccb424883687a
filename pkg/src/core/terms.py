"""Terms over a signature: parsing, printing and evaluation"""

import random
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.errors import SignatureError, ValidationError
from .algebra import FiniteAlgebra, Signature


@dataclass(frozen=True)
class Var:
    """Variable x<index>"""
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    """Application of an operation symbol"""
    symbol: str
    children: Tuple["Term", ...]

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Var, App]

_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_VARIABLE = re.compile(r"^x(\d+)$")


def parse_term(text: str) -> Term:
    """Parse prefix notation such as ``(+ x0 (- x1))``"""
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise ValidationError("Empty term")
    term, position = _parse(tokens, 0)
    if position != len(tokens):
        raise ValidationError(f"Trailing input in term: {' '.join(tokens[position:])}")
    return term


def _parse(tokens: List[str], position: int) -> Tuple[Term, int]:
    if position >= len(tokens):
        raise ValidationError("Unexpected end of term")
    token = tokens[position]
    if token == "(":
        if position + 1 >= len(tokens) or tokens[position + 1] in "()":
            raise ValidationError("Expected an operation symbol after '('")
        symbol = tokens[position + 1]
        position += 2
        children = []
        while position < len(tokens) and tokens[position] != ")":
            child, position = _parse(tokens, position)
            children.append(child)
        if position >= len(tokens):
            raise ValidationError("Unbalanced parentheses in term")
        return App(symbol, tuple(children)), position + 1
    if token == ")":
        raise ValidationError("Unexpected ')'")
    match = _VARIABLE.match(token)
    if not match:
        raise ValidationError(f"Expected a variable x<i>, got '{token}'")
    return Var(int(match.group(1))), position + 1


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return f"x{term.index}"
    if not term.children:
        return f"({term.symbol})"
    return "(" + term.symbol + " " + " ".join(format_term(c) for c in term.children) + ")"


def term_arity(term: Term) -> int:
    """One more than the largest variable index (0 for ground terms)"""
    if isinstance(term, Var):
        return term.index + 1
    return max((term_arity(c) for c in term.children), default=0)


def term_depth(term: Term) -> int:
    if isinstance(term, Var):
        return 0
    return 1 + max((term_depth(c) for c in term.children), default=0)


def substitute(term: Term, mapping: Callable[[int], Term]) -> Term:
    """Replace every variable x_i by mapping(i)"""
    cache: Dict[Term, Term] = {}

    def walk(t: Term) -> Term:
        if t in cache:
            return cache[t]
        if isinstance(t, Var):
            result = mapping(t.index)
        else:
            result = App(t.symbol, tuple(walk(c) for c in t.children))
        cache[t] = result
        return result

    return walk(term)


def check_term(signature: Signature, term: Term) -> None:
    """Raise SignatureError if a symbol is unknown or applied with the wrong arity"""
    if isinstance(term, Var):
        return
    arity = signature.arity(term.symbol)
    if arity != len(term.children):
        raise SignatureError(
            f"'{term.symbol}' has arity {arity} but is applied to {len(term.children)} terms",
            {"symbol": term.symbol},
        )
    for child in term.children:
        check_term(signature, child)


def eval_term(alg: FiniteAlgebra, term: Term, env: Sequence[int]) -> int:
    """Value of a term under an assignment of its variables"""
    check_term(alg.signature, term)
    needed = term_arity(term)
    if len(env) < needed:
        raise ValidationError(f"Term needs {needed} variables, environment has {len(env)}")
    for value in env:
        if not 0 <= value < alg.size:
            raise ValidationError(f"Element {value} outside universe of size {alg.size}")
    return _evaluate(alg, term, env)


def _evaluate(alg: FiniteAlgebra, term: Term, env: Sequence[int]) -> int:
    if isinstance(term, Var):
        return int(env[term.index])
    index = 0
    for child in term.children:
        index = index * alg.size + _evaluate(alg, child, env)
    return alg.op(term.symbol).cells[index]  # type: ignore[attr-defined, no-any-return]


def term_operation(alg: FiniteAlgebra, term: Term, arity: Optional[int] = None) -> np.ndarray:
    """Flat table of the term operation on A^arity (same indexing as basic tables)"""
    check_term(alg.signature, term)
    arity = term_arity(term) if arity is None else arity
    if arity < term_arity(term):
        raise ValidationError(f"Arity {arity} is too small for term {format_term(term)}")
    if arity == 0:
        grid = np.zeros((0, 1), dtype=np.int64)
    else:
        grid = np.indices((alg.size,) * arity).reshape(arity, -1).astype(np.int64)
    return evaluate_on_rows(alg, term, grid)


def evaluate_on_rows(alg: FiniteAlgebra, term: Term, variables: np.ndarray) -> np.ndarray:
    """Vectorized evaluation; variables[i] holds the values of x_i at every point"""
    cache: Dict[Term, np.ndarray] = {}
    points = variables.shape[1]

    def walk(t: Term) -> np.ndarray:
        if t in cache:
            return cache[t]
        if isinstance(t, Var):
            result = variables[t.index]
        else:
            index = np.zeros(points, dtype=np.int64)
            for child in t.children:
                index = index * alg.size + walk(child)
            result = alg.table(t.symbol)[index]
        cache[t] = result
        return result

    return walk(term)


def random_term(
    signature: Signature,
    arity: int,
    depth: int,
    rng: random.Random,
    leaf_probability: float = 0.3,
) -> Term:
    """Random term with at most the given depth"""
    if depth == 0 or (arity > 0 and rng.random() < leaf_probability):
        return Var(rng.randrange(arity))
    symbol, k = rng.choice(signature.symbols)
    return App(symbol, tuple(random_term(signature, arity, depth - 1, rng, leaf_probability)
                             for _ in range(k)))

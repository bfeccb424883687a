"""Star maps: congruences, subuniverses, relations and endomorphisms across the construction"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config.models import DEFAULT_LIMITS, Limits
from ..congruence.lattice import require_congruence
from ..congruence.partition import Partition
from ..core.algebra import mixed_radix_weights
from ..core.closure import TupleSet, generate_subuniverse
from ..core.homomorphism import is_homomorphism, iter_isomorphisms
from ..utils.errors import CapExceededError, ConsistencyError, ValidationError
from ..utils.logging import get_logger
from .constructed import ConstructedAlgebra

logger = get_logger(__name__)


def star_congruence(beta: Partition, c: ConstructedAlgebra) -> Partition:
    """beta* on the carrier: columns related iff related entrywise"""
    require_congruence(c.base, beta)
    if not beta.leq(c.chi.kernel()):
        raise ValidationError(
            f"Congruence {beta} is not below the kernel {c.chi.kernel()}",
            {"beta": str(beta)},
        )
    labels = np.asarray(beta.labels, dtype=np.int64)[c.columns()]
    keys = labels @ mixed_radix_weights([c.base.size] * c.m)
    return Partition.from_labels(keys.tolist())


def unstar_congruence(gamma: Partition, c: ConstructedAlgebra) -> Partition:
    """The congruence beta below the kernel with beta* = gamma"""
    require_congruence(c.algebra, gamma)
    fill = [elements[0] for elements in c.sort_elements]
    pairs = []
    for i, elements in enumerate(c.sort_elements):
        codes = []
        for a in elements:
            column = list(fill)
            column[i] = a
            codes.append(c.encode(column))
        for a, code_a in zip(elements, codes):
            for b, code_b in zip(elements, codes):
                if a < b and gamma.related(code_a, code_b):
                    pairs.append((a, b))
    beta = Partition.from_pairs(c.base.size, pairs)
    if star_congruence(beta, c) != gamma:
        raise ConsistencyError(
            f"Congruence {gamma} of the constructed algebra is not the image of {beta}",
            {"gamma": str(gamma), "beta": str(beta)},
        )
    return beta


def _require_shared_index(ctx: Sequence[ConstructedAlgebra]) -> None:
    if not ctx:
        raise ValidationError("At least one constructed algebra is required")
    index_alg = ctx[0].index_algebra
    for c in ctx[1:]:
        if c.index_algebra != index_alg:
            raise ValidationError("Constructed algebras use different index algebras")


def sort_rows(bs: TupleSet, ctx: Sequence[ConstructedAlgebra]) -> List[np.ndarray]:
    """B intersected with D^(i) = product of chi_j^-1(i), for each sort i"""
    rows = bs.rows()
    labels = np.stack(
        [np.asarray(c.chi.labels, dtype=np.int64)[rows[:, j]] for j, c in enumerate(ctx)],
        axis=1,
    )
    constant = (labels == labels[:, :1]).all(axis=1)
    return [rows[constant & (labels[:, 0] == i)] for i in range(ctx[0].m)]


def star_subuniverse(
    bs: TupleSet,
    ctx: Sequence[ConstructedAlgebra],
    limits: Optional[Limits] = None,
) -> TupleSet:
    """B* = product over i of (B intersected with D^(i)), as tuples of columns.

    The j-th column of a member takes its i-th entry from the j-th coordinate
    of the member's i-th row.
    """
    limits = limits or DEFAULT_LIMITS
    _require_shared_index(ctx)
    if bs.component_sizes != tuple(c.base.size for c in ctx):
        raise ValidationError("Tuple set does not live in the product of the base algebras")
    per_sort = sort_rows(bs, ctx)
    for i, rows in enumerate(per_sort):
        if rows.shape[0] == 0:
            raise ValidationError(
                f"The subuniverse has no tuple in sort {i}", {"sort": i}
            )
    count = int(np.prod([rows.shape[0] for rows in per_sort], dtype=object))
    if count > limits.closure_cap:
        raise CapExceededError(f"Image subuniverse would have {count} tuples",
                               {"cap": limits.closure_cap})
    outer = mixed_radix_weights([c.size for c in ctx])
    codes = np.zeros(1, dtype=np.int64)
    for i, rows in enumerate(per_sort):
        contribution = np.zeros(rows.shape[0], dtype=np.int64)
        for j, c in enumerate(ctx):
            contribution += c.positions[rows[:, j]] * int(c.weights[i]) * int(outer[j])
        codes = (codes[:, None] + contribution[None, :]).ravel()
    return TupleSet([c.size for c in ctx], codes)


def star_relation(relation: TupleSet, c: ConstructedAlgebra,
                  limits: Optional[Limits] = None) -> TupleSet:
    """R* for a reflexive compatible relation R contained in A^n[alpha]"""
    arity = len(relation.component_sizes)
    if relation.component_sizes != (c.base.size,) * arity:
        raise ValidationError("Relation is not on the base algebra")
    for a in c.base.elements:
        if (a,) * arity not in relation:
            raise ValidationError(f"Relation is not reflexive at {a}")
    labels = np.asarray(c.chi.labels, dtype=np.int64)[relation.rows()]
    if not (labels == labels[:, :1]).all():
        raise ValidationError("Relation is not contained in the kernel of chi")
    closed = generate_subuniverse([c.base] * arity, relation, limits=limits)
    if len(closed) != len(relation):
        raise ValidationError("Relation is not compatible with the operations")
    return star_subuniverse(relation, [c] * arity, limits)


def tilde_map(
    x: Sequence[int],
    paddings: Sequence[Sequence[int]],
    ctx: Sequence[ConstructedAlgebra],
) -> Tuple[int, ...]:
    """Pad an alpha-constant tuple to a tuple of columns.

    x lies in D^(i); column j has x_j at entry i and paddings[i'][j] at every
    other entry i'.
    """
    _require_shared_index(ctx)
    m = ctx[0].m
    if len(x) != len(ctx) or len(paddings) != m:
        raise ValidationError("Tuple, paddings and algebras do not match in length")
    sorts = {c.chi(a) for a, c in zip(x, ctx)}
    if len(sorts) != 1:
        raise ValidationError(f"Tuple {list(x)} is not constant modulo the kernels")
    (i,) = sorts
    for s, pad in enumerate(paddings):
        if len(pad) != len(ctx) or any(c.chi(a) != s for a, c in zip(pad, ctx)):
            raise ValidationError(f"Padding {list(pad)} does not lie in sort {s}")
    result = []
    for j, c in enumerate(ctx):
        column = [paddings[s][j] for s in range(m)]
        column[i] = x[j]
        result.append(c.encode(column))
    return tuple(result)


def star_endomorphism(psi: Sequence[int], c: ConstructedAlgebra) -> Tuple[int, ...]:
    """Columnwise application of an endomorphism whose graph lies in the kernel"""
    if not is_homomorphism(c.base, c.base, psi):
        raise ValidationError(f"Map {list(psi)} is not an endomorphism")
    if any(c.chi(psi[a]) != c.chi(a) for a in c.base.elements):
        raise ValidationError(f"Graph of {list(psi)} is not contained in the kernel")
    mapped = np.asarray(psi, dtype=np.int64)[c.columns()]
    return tuple(int(v) for v in c.encode_columns(mapped))


def star_automorphisms(c: ConstructedAlgebra) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Pairs (psi, psi*) for every automorphism psi with chi o psi = chi"""
    result = []
    for psi in iter_isomorphisms(c.base, c.base):
        if all(c.chi(psi[a]) == c.chi(a) for a in c.base.elements):
            result.append((psi, star_endomorphism(psi, c)))
    return result

"""Tests for coordinate terms and term lifting"""

import itertools
import random
from typing import List

import numpy as np
import pytest

from src.congruence.partition import Partition
from src.construct.constructed import ConstructedAlgebra, construct_c
from src.construct.terms import coordinate_terms, lift_idempotent, lift_term, unit_assignment
from src.core.algebra import FiniteAlgebra
from src.core.homomorphism import quotient
from src.core.terms import (
    Var,
    eval_term,
    evaluate_on_rows,
    format_term,
    parse_term,
    random_term,
    term_operation,
)
from src.utils.errors import SignatureError, ValidationError


def entries(c: ConstructedAlgebra, codes) -> list:
    """Flatten columns so that entry i of column j sits at j*m + i"""
    return [a for code in codes for a in c.decode(code)]


class TestCoordinateTerms:
    """Columnwise reading of constructed-language terms"""

    def test_diagonal(self, z4_c: ConstructedAlgebra) -> None:
        ts = coordinate_terms(parse_term("(d x0 x1)"), 2, z4_c.index_algebra)
        assert ts == [Var(0), Var(3)]

    def test_sorted_operation(self, z4_c: ConstructedAlgebra) -> None:
        ts = coordinate_terms(parse_term("(+^<0,1> x0 x1)"), 2, z4_c.index_algebra)
        assert [format_term(t) for t in ts] == ["x0", "(+ x0 x3)"]

    def test_unknown_symbol(self, z4_c: ConstructedAlgebra) -> None:
        with pytest.raises(SignatureError):
            coordinate_terms(parse_term("(+ x0 x1)"), 2, z4_c.index_algebra)
        with pytest.raises(SignatureError):
            coordinate_terms(parse_term("(d x0)"), 2, z4_c.index_algebra)
        with pytest.raises(SignatureError):
            coordinate_terms(parse_term("(-^<2> x0)"), 2, z4_c.index_algebra)

    def test_agree_with_evaluation(self, z4_c: ConstructedAlgebra, Z4g: FiniteAlgebra) -> None:
        """Evaluating a term on columns equals evaluating its coordinate terms entrywise"""
        rng = random.Random(11)
        for _ in range(25):
            term = random_term(z4_c.algebra.signature, 2, 3, rng)
            ts = coordinate_terms(term, 2, z4_c.index_algebra)
            for codes in itertools.product(range(4), repeat=2):
                value = z4_c.decode(eval_term(z4_c.algebra, term, codes))
                env = entries(z4_c, codes)
                assert value == tuple(eval_term(Z4g, t, env) for t in ts)

    @staticmethod
    def _sweep(constructions: List[ConstructedAlgebra], count: int, seed: int) -> None:
        rng = random.Random(seed)
        for c in constructions:
            codes = list(itertools.product(range(c.size), repeat=2))
            envs = np.array([entries(c, pair) for pair in codes], dtype=np.int64).T
            columns = c.columns()
            for _ in range(count):
                term = random_term(c.algebra.signature, 2, 4, rng)
                ts = coordinate_terms(term, c.m, c.index_algebra)
                expected = columns[term_operation(c.algebra, term, 2)]
                for i, t in enumerate(ts):
                    got = evaluate_on_rows(c.base, t, envs)
                    assert (got == expected[:, i]).all(), (c.algebra.name, format_term(term))

    def test_agree_across_constructions(self, constructions: List[ConstructedAlgebra]) -> None:
        self._sweep(constructions, 50, seed=17)

    @pytest.mark.slow
    def test_agree_across_constructions_sweep(
        self, constructions: List[ConstructedAlgebra]
    ) -> None:
        self._sweep(constructions, 1000, seed=23)


class TestLiftTerm:
    """Lifting coordinate terms back to the constructed language"""

    def test_unit_assignment(self) -> None:
        assert unit_assignment(2, 3) == [0, 1, 0, 1, 0, 1]

    def test_lift_projection_pair(self, z4_c: ConstructedAlgebra) -> None:
        term = lift_term([Var(0), Var(3)], 2, z4_c.index_algebra, 2)
        for codes in itertools.product(range(4), repeat=2):
            assert eval_term(z4_c.algebra, term, codes) == z4_c.algebra.apply("d", codes)

    def test_lift_reproduces_coordinates(self, z4_c: ConstructedAlgebra,
                                         Z4g: FiniteAlgebra) -> None:
        ts = [parse_term("(+ x0 (- x2))"), parse_term("(+ x1 (+ x2 x2))")]
        term = lift_term(ts, 2, z4_c.index_algebra, 2)
        lifted = coordinate_terms(term, 2, z4_c.index_algebra)
        for codes in itertools.product(range(4), repeat=2):
            env = entries(z4_c, codes)
            expected = tuple(eval_term(Z4g, t, env) for t in ts)
            assert z4_c.decode(eval_term(z4_c.algebra, term, codes)) == expected
            assert tuple(eval_term(Z4g, t, env) for t in lifted) == expected

    def test_unit_condition(self, z4_c: ConstructedAlgebra) -> None:
        with pytest.raises(ValidationError):
            lift_term([Var(1), Var(3)], 2, z4_c.index_algebra, 2)
        with pytest.raises(ValidationError):
            lift_term([Var(0)], 2, z4_c.index_algebra, 2)

    def test_single_sort_has_no_diagonal(self, A2: FiniteAlgebra) -> None:
        _, chi = quotient(A2, Partition.total(2))
        term = lift_term([parse_term("(* x0 x1)")], 1, chi.codomain, 2)
        assert format_term(term) == "(*^<0,0> x0 x1)"
        c = construct_c(A2, chi)
        assert eval_term(c.algebra, term, (1, 1)) == 1


class TestLiftIdempotent:
    """Idempotent terms lift to terms with the same columnwise action"""

    def test_maltsev(self, z4_c: ConstructedAlgebra, Z4g: FiniteAlgebra) -> None:
        term = lift_idempotent(parse_term("(+ (+ x0 (- x1)) x2)"), 3, 2,
                               z4_c.index_algebra, Z4g)
        alg = z4_c.algebra
        for x, y in itertools.product(range(4), repeat=2):
            assert eval_term(alg, term, (x, x, y)) == y
            assert eval_term(alg, term, (x, y, y)) == x

    def test_not_idempotent(self, z4_c: ConstructedAlgebra, Z4g: FiniteAlgebra) -> None:
        with pytest.raises(ValidationError) as exc_info:
            lift_idempotent(parse_term("(+ x0 x1)"), 2, 2, z4_c.index_algebra, Z4g)
        assert "base algebra" in exc_info.value.message

    def test_too_many_variables(self, z4_c: ConstructedAlgebra) -> None:
        with pytest.raises(ValidationError):
            lift_idempotent(parse_term("(+ x0 x3)"), 2, 2, z4_c.index_algebra)

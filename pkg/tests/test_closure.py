"""Tests for subuniverse generation in finite products"""

import numpy as np
import pytest

from src.config.models import Limits
from src.core.algebra import FiniteAlgebra
from src.core.closure import (
    RowCodec,
    TupleSet,
    close,
    closure_contains,
    derivation_terms,
    generate_subuniverse,
)
from src.core.terms import eval_term
from src.monitoring.metrics import MetricsManager
from src.utils.errors import CapExceededError, ValidationError

CUBE_GENERATORS = [(1, 1, 0), (0, 1, 1)]


class TestTupleSet:
    """Sorted row storage"""

    def test_codes_and_rows_agree(self) -> None:
        codec = RowCodec([2, 3])
        assert codec.encode_one((1, 2)) == 5
        by_codes = TupleSet([2, 3], [5, 0, 5])
        by_tuples = TupleSet.from_tuples([2, 3], [(0, 0), (1, 2)])
        assert by_codes == by_tuples
        assert len(by_codes) == 2
        assert list(by_codes) == [(0, 0), (1, 2)]

    def test_membership(self) -> None:
        tuples = TupleSet.from_tuples([2, 2], [(0, 1)])
        assert (0, 1) in tuples
        assert [0, 1] in tuples
        assert (1, 0) not in tuples
        assert (0, 5) not in tuples
        assert (0,) not in tuples

    def test_set_operations(self) -> None:
        small = TupleSet.from_tuples([2, 2], [(0, 0)])
        big = TupleSet.from_tuples([2, 2], [(0, 0), (1, 1)])
        assert small.issubset(big)
        assert not big.issubset(small)
        assert big.intersection(small) == small
        assert big.project([1]) == TupleSet.from_tuples([2], [(0,), (1,)])

    def test_incompatible_products(self) -> None:
        with pytest.raises(ValidationError):
            TupleSet.from_tuples([2], [(0,)]).issubset(TupleSet.from_tuples([3], [(0,)]))

    def test_out_of_range_tuple(self) -> None:
        with pytest.raises(ValidationError):
            TupleSet.from_tuples([2, 2], [(0, 2)])


class TestClose:
    """Worklist closure"""

    def test_cube_subgroup(self, Z2: FiniteAlgebra) -> None:
        members = generate_subuniverse([Z2] * 3, CUBE_GENERATORS)
        assert members.tuples == {(0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)}

    def test_single_component(self, Z4g: FiniteAlgebra) -> None:
        assert generate_subuniverse([Z4g], [(2,)]).tuples == {(0,), (2,)}

    def test_semilattice_generators_closed(self, A2: FiniteAlgebra) -> None:
        """Meets of the generators are all that is added"""
        members = generate_subuniverse([A2, A2], [(1, 0), (0, 1), (1, 1)])
        assert members.tuples == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_empty_generators(self, Z2: FiniteAlgebra) -> None:
        assert len(generate_subuniverse([Z2], [])) == 0
        with pytest.raises(ValidationError):
            generate_subuniverse([Z2], [], require_nonempty=True)

    def test_generator_order(self, Z2: FiniteAlgebra) -> None:
        """Distinct generators come first, in first-occurrence order"""
        run = close([Z2, Z2], [(1, 1), (0, 1), (1, 1)])
        assert run.generators == 2
        assert run.row(0) == (1, 1)
        assert run.row(1) == (0, 1)
        assert len(run.members) == 4

    def test_mixed_components(self, Z2: FiniteAlgebra, Z4g: FiniteAlgebra) -> None:
        members = generate_subuniverse([Z4g, Z2], [(1, 1)])
        assert members.tuples == {(a, a % 2) for a in range(4)}

    def test_wide_product_without_codes(self, Z2: FiniteAlgebra) -> None:
        """Products beyond 64-bit codes fall back to row keys"""
        width = 70
        assert not RowCodec.fits([2] * width)
        generator = tuple(i % 2 for i in range(width))
        members = generate_subuniverse([Z2] * width, [generator])
        assert members.tuples == {generator, (0,) * width}

    def test_wide_subgroup_matches_enumeration(self, Z4g: FiniteAlgebra) -> None:
        """Hashed row keys give the same subgroup as listing the combinations"""
        width = 40
        assert not RowCodec.fits([4] * width)
        gens = np.random.default_rng(3).integers(0, 4, size=(2, width))
        expected = {
            tuple(int(v) for v in (a * gens[0] + b * gens[1]) % 4)
            for a in range(4)
            for b in range(4)
        }
        generators = [tuple(g) for g in gens.tolist()]
        run = close([Z4g] * width, generators + [generators[0]])
        assert run.generators == 2
        assert run.members.tuples == expected
        assert np.unique(run.discovered, axis=0).shape[0] == len(expected)

    def test_work_cap(self, Z4g: FiniteAlgebra) -> None:
        with pytest.raises(CapExceededError) as exc_info:
            close([Z4g, Z4g], [(1, 0), (0, 1)], limits=Limits(work_cap=5))
        assert exc_info.value.details["work_cap"] == 5

    def test_work_within_cap(self, Z2: FiniteAlgebra) -> None:
        run = close([Z2] * 3, CUBE_GENERATORS)
        assert run.evaluations > 0
        again = close([Z2] * 3, CUBE_GENERATORS, limits=Limits(work_cap=run.evaluations))
        assert again.members == run.members

    def test_cap(self, Z4g: FiniteAlgebra) -> None:
        with pytest.raises(CapExceededError):
            close([Z4g, Z4g], [(1, 0), (0, 1)], cap=10)

    def test_metrics(self, Z2: FiniteAlgebra, metrics: MetricsManager) -> None:
        close([Z2] * 3, CUBE_GENERATORS, metrics=metrics)
        samples = metrics.get_metrics()["closure.size"]
        assert samples[-1].value == 4.0


class TestMembership:
    """Early-stopping membership"""

    def test_member(self, Z2: FiniteAlgebra) -> None:
        assert closure_contains([Z2] * 3, CUBE_GENERATORS, (1, 0, 1))

    def test_non_member(self, Z2: FiniteAlgebra) -> None:
        assert not closure_contains([Z2] * 3, CUBE_GENERATORS, (1, 0, 0))

    def test_generator_is_member(self, Z2: FiniteAlgebra) -> None:
        assert closure_contains([Z2] * 3, CUBE_GENERATORS, (0, 1, 1))

    def test_target_out_of_range(self, Z2: FiniteAlgebra) -> None:
        with pytest.raises(ValidationError):
            closure_contains([Z2] * 3, CUBE_GENERATORS, (2, 0, 0))

    def test_stop_records_hit(self, Z4g: FiniteAlgebra) -> None:
        run = close([Z4g], [(1,)], stop=lambda rows: rows[:, 0] == 3)
        assert run.hit is not None
        assert run.row(run.hit) == (3,)


class TestDerivations:
    """Provenance replays to terms"""

    def test_terms_reproduce_members(self, Z4s: FiniteAlgebra) -> None:
        generators = [(1, 2), (3, 3)]
        run = close([Z4s, Z4s], generators, track=True)
        terms = derivation_terms(run)
        for index in range(len(run.members)):
            term = terms(index)
            row = run.row(index)
            for j in range(2):
                assert eval_term(Z4s, term, [g[j] for g in generators]) == row[j]

    def test_generators_are_variables(self, Z2: FiniteAlgebra) -> None:
        run = close([Z2] * 3, CUBE_GENERATORS, track=True)
        terms = derivation_terms(run)
        assert str(terms(0)) == "x0"
        assert str(terms(1)) == "x1"

    def test_untracked_run(self, Z2: FiniteAlgebra) -> None:
        run = close([Z2] * 3, CUBE_GENERATORS)
        with pytest.raises(ValidationError):
            derivation_terms(run)(3)

    def test_discovered_matches_members(self, Z4g: FiniteAlgebra) -> None:
        run = close([Z4g, Z4g], [(1, 2)])
        assert TupleSet.from_rows([4, 4], run.discovered) == run.members
        assert np.unique(run.discovered, axis=0).shape[0] == run.discovered.shape[0]

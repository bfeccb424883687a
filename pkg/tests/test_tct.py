"""Tests for unary polynomials, minimal sets and types of prime quotients"""

from typing import List

import pytest

from src.config.models import Limits
from src.congruence.partition import Partition
from src.construct.constructed import ConstructedAlgebra
from src.core.algebra import FiniteAlgebra
from src.core.corpus import bin2
from src.tct.lift import default_fill, lift_trace, trace_lift_holds
from src.tct.minimal import minimal_sets, require_covering, separates
from src.tct.polynomials import is_idempotent_map, unary_polynomials
from src.tct.types import TCTType, classify_type, induced_algebra, prime_quotient_types
from src.utils.errors import CapExceededError, ValidationError

BIN2_TYPES = {
    1: [0, 3, 5, 10, 12, 15],
    2: [6, 9],
    3: [2, 4, 8, 11, 13, 14],
    5: [1, 7],
}


class TestUnaryPolynomials:
    """Pol_1 as value tuples"""

    def test_z4(self, Z4g: FiniteAlgebra) -> None:
        polys = unary_polynomials(Z4g)
        assert len(polys) == 16
        assert (0, 1, 2, 3) in polys
        assert (1, 3, 1, 3) in polys

    def test_semilattice(self, A2: FiniteAlgebra) -> None:
        assert unary_polynomials(A2) == [(0, 0), (0, 1), (1, 1)]

    def test_size_cap(self, Z4g: FiniteAlgebra) -> None:
        with pytest.raises(CapExceededError):
            unary_polynomials(Z4g, Limits(polynomial_size_cap=3))

    def test_idempotent(self) -> None:
        assert is_idempotent_map((0, 0, 2))
        assert not is_idempotent_map((1, 0))


class TestMinimalSets:
    """Images of idempotent polynomials separating a prime quotient"""

    def test_z4_bottom(self, Z4g: FiniteAlgebra, part) -> None:
        (data,) = minimal_sets(Z4g, Partition.identity(4), part("02|13", 4))
        assert data.universe == frozenset(range(4))
        assert data.traces == (frozenset({0, 2}), frozenset({1, 3}))
        assert data.to_dict()["traces"] == [[0, 2], [1, 3]]

    def test_z4_top(self, Z4g: FiniteAlgebra, part) -> None:
        (data,) = minimal_sets(Z4g, part("02|13", 4), Partition.total(4))
        assert data.traces == (frozenset(range(4)),)

    def test_semilattice(self, A2: FiniteAlgebra) -> None:
        (data,) = minimal_sets(A2, Partition.identity(2), Partition.total(2))
        assert data.idempotent == (0, 1)

    def test_not_covering(self, Z4g: FiniteAlgebra) -> None:
        with pytest.raises(ValidationError):
            require_covering(Z4g, Partition.identity(4), Partition.total(4))
        with pytest.raises(ValidationError):
            minimal_sets(Z4g, Partition.identity(4), Partition.from_blocks(4, [[0, 1]]))

    def test_separates(self, part) -> None:
        delta, theta = Partition.identity(4), part("02|13", 4)
        assert separates(frozenset({0, 2}), delta, theta)
        assert not separates(frozenset({0, 1}), delta, theta)


class TestTypes:
    """Type labels of prime quotients"""

    @pytest.mark.parametrize("expected, codes", sorted(BIN2_TYPES.items()))
    def test_two_element_binars(self, expected: int, codes: List[int]) -> None:
        for code in codes:
            result = classify_type(bin2(code), Partition.identity(2), Partition.total(2))
            assert result.type == expected, code

    def test_lattice(self, L2: FiniteAlgebra) -> None:
        result = classify_type(L2, Partition.identity(2), Partition.total(2))
        assert result == TCTType(4)
        assert result.label == "lattice"

    def test_affine_characteristic(self, Z2: FiniteAlgebra) -> None:
        result = classify_type(Z2, Partition.identity(2), Partition.total(2))
        assert result == TCTType(2, 2)
        assert str(result) == "2 (affine, characteristic 2)"
        assert result.to_dict() == {"type": 2, "label": "affine", "characteristic": 2}

    def test_z4_chain(self, Z4s: FiniteAlgebra) -> None:
        types = prime_quotient_types(Z4s)
        assert len(types) == 2
        assert all(t == TCTType(2, 2) for _, _, t in types)

    def test_klein(self, Klein: FiniteAlgebra) -> None:
        types = prime_quotient_types(Klein)
        assert len(types) == 6
        assert {t for _, _, t in types} == {TCTType(2, 2)}

    def test_induced_algebra(self, Z4g: FiniteAlgebra) -> None:
        minimal = induced_algebra(Z4g, frozenset({0, 2}), Partition.identity(4))
        assert minimal.size == 2
        with pytest.raises(CapExceededError):
            induced_algebra(Z4g, frozenset({0, 2}), Partition.identity(4),
                            Limits(trace_size_cap=1))


class TestTraceLift:
    """Traces carried into the construction"""

    def test_lift_trace(self, Z4g: FiniteAlgebra, z4_c: ConstructedAlgebra, part) -> None:
        (data,) = minimal_sets(Z4g, Partition.identity(4), part("02|13", 4))
        assert default_fill(z4_c) == (0, 1)
        assert lift_trace(z4_c, data, frozenset({0, 2})) == (frozenset({0, 2}),
                                                             frozenset({0, 2}))
        assert lift_trace(z4_c, data, frozenset({1, 3})) == (frozenset({0, 1}),
                                                             frozenset({0, 1}))

    def test_other_fill(self, Z4g: FiniteAlgebra, z4_c: ConstructedAlgebra, part) -> None:
        (data,) = minimal_sets(Z4g, Partition.identity(4), part("02|13", 4))
        lifted, _ = lift_trace(z4_c, data, frozenset({0, 2}), fill=(0, 3))
        assert lifted == frozenset({1, 3})
        with pytest.raises(ValidationError):
            lift_trace(z4_c, data, frozenset({0, 2}), fill=(0, 2))

    def test_foreign_trace(self, Z4g: FiniteAlgebra, z4_c: ConstructedAlgebra, part) -> None:
        (data,) = minimal_sets(Z4g, Partition.identity(4), part("02|13", 4))
        with pytest.raises(ValidationError):
            lift_trace(z4_c, data, frozenset({0, 1}))

    def test_holds(self, z4_c: ConstructedAlgebra, part) -> None:
        assert trace_lift_holds(z4_c, Partition.identity(4), part("02|13", 4))


@pytest.mark.slow
class TestTraceLiftSweep:
    """Every prime quotient below the kernel, for every small construction"""

    def test_constructions(self, constructions: List[ConstructedAlgebra]) -> None:
        from src.congruence.lattice import covering_pairs

        for c in constructions:
            for delta, theta in covering_pairs(c.base, c.chi.kernel()):
                assert trace_lift_holds(c, delta, theta), c.algebra.name

"""Tests for partitions, congruence generation and congruence lattices"""

from functools import reduce

import pytest

from src.config.models import Limits
from src.congruence.lattice import (
    cg,
    con_lattice,
    covering_pairs,
    covers,
    interval,
    is_congruence,
    join,
    monolith,
    permutes,
    principal,
    relcompose,
)
from src.congruence.partition import (
    Partition,
    format_partition,
    parse_partition,
    partition_from_json,
)
from src.core.algebra import FiniteAlgebra
from src.core.corpus import corpus
from src.utils.errors import CapExceededError, ValidationError


class TestPartition:
    """Canonical labels and lattice operations on equivalences"""

    def test_canonical_labels(self) -> None:
        p = Partition.from_labels([7, 3, 7, 3])
        assert p.labels == (0, 1, 0, 1)
        assert p.blocks() == ((0, 2), (1, 3))
        assert p.num_blocks == 2
        assert p.block_of(3) == (1, 3)

    def test_non_canonical_rejected(self) -> None:
        with pytest.raises(ValidationError):
            Partition([1, 0])

    def test_overlapping_blocks(self) -> None:
        with pytest.raises(ValidationError):
            Partition.from_blocks(3, [[0, 1], [1, 2]])

    def test_identity_and_total(self) -> None:
        assert Partition.identity(3).is_identity
        assert Partition.total(3).is_total
        assert Partition.identity(1) == Partition.total(1)

    def test_order_meet_join(self) -> None:
        p = Partition.from_blocks(4, [[0, 1]])
        q = Partition.from_blocks(4, [[1, 2]])
        assert p.meet(q) == Partition.identity(4)
        assert p.join(q) == Partition.from_blocks(4, [[0, 1, 2]])
        assert p.leq(p.join(q))
        assert not p.leq(q)

    def test_different_sizes(self) -> None:
        with pytest.raises(ValidationError):
            Partition.identity(2).leq(Partition.identity(3))

    def test_immutable(self) -> None:
        with pytest.raises(AttributeError):
            Partition.identity(2).labels = (0, 0)  # type: ignore[misc]

    def test_sort_key_finer_first(self) -> None:
        parts = [Partition.total(3), Partition.from_blocks(3, [[1, 2]]), Partition.identity(3)]
        assert sorted(parts, key=Partition.sort_key)[0] == Partition.identity(3)
        assert sorted(parts, key=Partition.sort_key)[-1] == Partition.total(3)


class TestPartitionText:
    """Bar strings, keywords and label arrays"""

    @pytest.mark.parametrize("text", ["02|13", "0,2|1,3", "[0, 1, 0, 1]", "[5, 9, 5, 9]"])
    def test_forms(self, text: str) -> None:
        assert parse_partition(text, 4) == Partition.from_blocks(4, [[0, 2], [1, 3]])

    def test_keywords(self) -> None:
        assert parse_partition("0", 3) == Partition.identity(3)
        assert parse_partition("identity", 3) == Partition.identity(3)
        assert parse_partition("1", 3) == Partition.total(3)
        assert parse_partition("total", 3) == Partition.total(3)

    def test_omitted_singletons(self) -> None:
        assert parse_partition("02", 4) == Partition.from_blocks(4, [[0, 2]])

    def test_large_universe_uses_commas(self) -> None:
        p = Partition.from_blocks(12, [[0, 11]])
        text = format_partition(p)
        assert text.startswith("0,11|1|2")
        assert parse_partition(text, 12) == p

    def test_format_small(self) -> None:
        assert str(Partition.from_blocks(4, [[0, 2], [1, 3]])) == "02|13"

    def test_invalid_text(self) -> None:
        with pytest.raises(ValidationError):
            parse_partition("0a|1", 3)
        with pytest.raises(ValidationError):
            parse_partition("[0, 1", 2)
        with pytest.raises(ValidationError):
            parse_partition("04", 3)

    def test_json_normalized(self) -> None:
        assert partition_from_json([1, 0, 1, 0]).labels == (0, 1, 0, 1)
        with pytest.raises(ValidationError):
            partition_from_json([0, 1], 3)


class TestGeneration:
    """Principal and finitely generated congruences"""

    def test_z4_principal(self, Z4g: FiniteAlgebra) -> None:
        assert principal(Z4g, 0, 2) == Partition.from_blocks(4, [[0, 2], [1, 3]])
        assert principal(Z4g, 0, 1) == Partition.total(4)

    def test_no_pairs(self, Z4g: FiniteAlgebra) -> None:
        assert cg(Z4g, []) == Partition.identity(4)
        assert cg(Z4g, [(1, 1)]) == Partition.identity(4)

    def test_pair_out_of_range(self, Z4g: FiniteAlgebra) -> None:
        with pytest.raises(ValidationError):
            cg(Z4g, [(0, 4)])

    def test_is_congruence(self, Z4g: FiniteAlgebra, part) -> None:
        assert is_congruence(Z4g, part("02|13", 4))
        assert not is_congruence(Z4g, part("01|23", 4))
        assert not is_congruence(Z4g, Partition.identity(3))

    def test_cg_is_least(self) -> None:
        """cg(a, b) is the meet of every congruence relating a and b"""
        for alg in corpus():
            lattice = con_lattice(alg)
            for a in range(alg.size):
                for b in range(a + 1, alg.size):
                    above = [p for p in lattice if p.related(a, b)]
                    assert principal(alg, a, b) == reduce(Partition.meet, above)


class TestLattice:
    """Con(A) and its covering structure"""

    def test_z4(self, Z4g: FiniteAlgebra, part) -> None:
        assert con_lattice(Z4g) == [Partition.identity(4), part("02|13", 4), Partition.total(4)]

    def test_z4_super(self, Z4s: FiniteAlgebra) -> None:
        assert len(con_lattice(Z4s)) == 3

    def test_klein(self, Klein: FiniteAlgebra) -> None:
        assert len(con_lattice(Klein)) == 5
        assert monolith(Klein) is None

    def test_two_element(self, A2: FiniteAlgebra) -> None:
        assert con_lattice(A2) == [Partition.identity(2), Partition.total(2)]
        assert monolith(A2) == Partition.total(2)

    def test_monolith(self, Z4g: FiniteAlgebra, part) -> None:
        assert monolith(Z4g) == part("02|13", 4)

    def test_trivial_algebra_has_no_monolith(self, Z4g: FiniteAlgebra) -> None:
        from src.core.homomorphism import quotient

        trivial, _ = quotient(Z4g, Partition.total(4))
        assert monolith(trivial) is None

    def test_closed_under_meet_and_join(self) -> None:
        for alg in corpus():
            lattice = con_lattice(alg)
            for p in lattice:
                for q in lattice:
                    assert p.meet(q) in lattice
                    assert p.join(q) == join(alg, p, q)

    def test_cap(self, Klein: FiniteAlgebra) -> None:
        with pytest.raises(CapExceededError):
            con_lattice(Klein, Limits(lattice_cap=3))

    def test_covers(self, Z4g: FiniteAlgebra, part) -> None:
        lattice = con_lattice(Z4g)
        zero, mid, one = lattice
        assert covers(lattice, zero, mid)
        assert not covers(lattice, zero, one)
        assert not covers(lattice, mid, mid)
        assert interval(lattice, mid, one) == [mid, one]

    def test_covering_pairs(self, Z4g: FiniteAlgebra, Klein: FiniteAlgebra, part) -> None:
        assert len(covering_pairs(Z4g)) == 2
        assert len(covering_pairs(Klein)) == 6
        below = covering_pairs(Z4g, part("02|13", 4))
        assert below == [(Partition.identity(4), part("02|13", 4))]


class TestPermutability:
    """Relational products"""

    def test_group_congruences_permute(self, Klein: FiniteAlgebra) -> None:
        lattice = con_lattice(Klein)
        assert all(permutes(p, q) for p in lattice for q in lattice)

    def test_equivalences_that_do_not_permute(self) -> None:
        p = Partition.from_blocks(3, [[0, 1]])
        q = Partition.from_blocks(3, [[1, 2]])
        assert (0, 2) in relcompose(p, q, 2)
        assert (2, 0) not in relcompose(p, q, 2)
        assert not permutes(p, q)
        assert permutes(p, q, 3)

    def test_single_factor(self) -> None:
        p = Partition.from_blocks(3, [[0, 2]])
        assert relcompose(p, Partition.identity(3), 1) == p.pairs()
        with pytest.raises(ValidationError):
            relcompose(p, p, 0)

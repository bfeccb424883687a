"""Tests for matrix algebras, higher commutators and centralizers"""

import pytest

from src.config.models import Limits
from src.congruence.lattice import con_lattice
from src.congruence.partition import Partition
from src.core.algebra import FiniteAlgebra
from src.core.corpus import bin2, corpus
from src.commutator.commutator import (
    centralizer,
    commutator,
    higher_commutator,
    is_abelian,
    is_k_supernilpotent,
    is_nilpotent,
)
from src.commutator.matrix import (
    CubeLabeling,
    check_dimension,
    cube_bit,
    face_labeling,
    matrix_algebra,
    matrix_generators,
)
from src.utils.errors import CapExceededError, NotCongruenceError, ValidationError


class TestCubes:
    """Vertex numbering and face labelings"""

    def test_cube_bit(self) -> None:
        assert [cube_bit(2, 1, eps) for eps in range(4)] == [0, 0, 1, 1]
        assert [cube_bit(2, 2, eps) for eps in range(4)] == [0, 1, 0, 1]

    def test_face_labeling(self) -> None:
        assert face_labeling(2, 1, 3, 5).values == (3, 3, 5, 5)
        assert face_labeling(3, 3, 0, 1).values == (0, 1, 0, 1, 0, 1, 0, 1)
        with pytest.raises(ValidationError):
            face_labeling(2, 3, 0, 1)

    def test_labeling_length(self) -> None:
        with pytest.raises(ValidationError):
            CubeLabeling(2, (0, 1, 2))
        assert CubeLabeling(1, (0, 3)).within(4)
        assert not CubeLabeling(1, (0, 4)).within(4)

    def test_generators(self, Z2: FiniteAlgebra) -> None:
        total = Partition.total(2)
        gens = matrix_generators(Z2, [total, Partition.identity(2)])
        # four pairs of the total relation on the first face, two diagonal pairs on the second
        assert len(gens) == 6
        assert (0, 0, 1, 1) in gens
        assert (1, 1, 1, 1) in gens


class TestMatrixAlgebra:
    """Generated subuniverses of A^(2^k)"""

    def test_z2_square(self, Z2: FiniteAlgebra) -> None:
        """For a group the matrices are (x, x+u, x+v, x+u+v)"""
        total = Partition.total(2)
        matrix = matrix_algebra(Z2, [total, total])
        assert len(matrix) == 8
        assert all(a ^ b ^ c ^ d == 0 for a, b, c, d in matrix)

    def test_z4_square(self, Z4g: FiniteAlgebra) -> None:
        total = Partition.total(4)
        assert len(matrix_algebra(Z4g, [total, total])) == 64

    def test_identity_faces(self, A2: FiniteAlgebra) -> None:
        zero = Partition.identity(2)
        matrix = matrix_algebra(A2, [zero, zero])
        assert matrix.tuples == {(0, 0, 0, 0), (1, 1, 1, 1)}

    def test_rejects_non_congruence(self, Z4g: FiniteAlgebra, part) -> None:
        with pytest.raises(NotCongruenceError):
            matrix_algebra(Z4g, [part("01|23", 4), Partition.total(4)])

    def test_dimension_guardrail(self, Z4g: FiniteAlgebra, Z2: FiniteAlgebra) -> None:
        with pytest.raises(CapExceededError):
            check_dimension(Z4g, 4)
        check_dimension(Z2, 4)
        with pytest.raises(CapExceededError):
            check_dimension(Z4g, 3, Limits(closure_cap=1000))
        with pytest.raises(ValidationError):
            check_dimension(Z2, 0)


class TestBinaryCommutator:
    """[alpha, beta] on the corpus"""

    def test_abelian_groups(self, Z4g: FiniteAlgebra, Klein: FiniteAlgebra) -> None:
        assert is_abelian(Z4g)
        assert is_abelian(Klein)

    def test_semilattice(self, A2: FiniteAlgebra, L2: FiniteAlgebra) -> None:
        total = Partition.total(2)
        assert commutator(A2, total, total) == total
        assert commutator(L2, total, total) == total
        assert not is_abelian(A2)

    def test_z4_super(self, Z4s: FiniteAlgebra, part) -> None:
        total = Partition.total(4)
        assert commutator(Z4s, total, total) == part("02|13", 4)
        assert commutator(Z4s, total, part("02|13", 4)) == Partition.identity(4)
        assert is_abelian(Z4s, part("02|13", 4))

    def test_zero_argument(self, A2: FiniteAlgebra) -> None:
        zero, total = Partition.identity(2), Partition.total(2)
        assert commutator(A2, total, zero).is_identity
        assert commutator(A2, zero, total).is_identity

    def test_general_properties(self) -> None:
        """Symmetric, below the meet and monotone"""
        for alg in corpus():
            lattice = con_lattice(alg)
            for alpha in lattice:
                for beta in lattice:
                    value = commutator(alg, alpha, beta)
                    assert value == commutator(alg, beta, alpha)
                    assert value.leq(alpha.meet(beta))
                    for bigger in lattice:
                        if beta.leq(bigger):
                            assert value.leq(commutator(alg, alpha, bigger))


class TestHigherCommutator:
    """Commutators of more than two congruences"""

    def test_z4_super_ternary(self, Z4s: FiniteAlgebra) -> None:
        total = Partition.total(4)
        assert higher_commutator(Z4s, [total] * 3).is_identity

    def test_semilattice_ternary(self, A2: FiniteAlgebra) -> None:
        total = Partition.total(2)
        assert higher_commutator(A2, [total] * 3) == total

    def test_single_congruence(self, Z4g: FiniteAlgebra, part) -> None:
        """The unary commutator is the congruence itself"""
        assert higher_commutator(Z4g, [part("02|13", 4)]) == part("02|13", 4)

    def test_adding_arguments_decreases(self) -> None:
        for alg in corpus():
            for alpha in con_lattice(alg):
                binary = higher_commutator(alg, [alpha] * 2)
                ternary = higher_commutator(alg, [alpha] * 3)
                assert ternary.leq(binary)

    def test_supernilpotence(self, Z4s: FiniteAlgebra, Z4g: FiniteAlgebra) -> None:
        total = Partition.total(4)
        assert not is_k_supernilpotent(Z4s, total, 1)
        assert is_k_supernilpotent(Z4s, total, 2)
        assert is_k_supernilpotent(Z4g, total, 1)
        assert is_k_supernilpotent(Z4s, Partition.identity(4), 1)

    def test_four_congruences_stop_at_work_cap(self) -> None:
        """A^16 closures that outgrow the work cap raise instead of running on"""
        with pytest.raises(CapExceededError) as exc_info:
            is_k_supernilpotent(bin2(2), Partition.total(2), 3, Limits(work_cap=1_000_000))
        assert exc_info.value.code == "CAP_EXCEEDED"

    @pytest.mark.slow
    def test_four_congruences_default_limits(self) -> None:
        with pytest.raises(CapExceededError):
            is_k_supernilpotent(bin2(2), Partition.total(2), 3)


class TestNilpotence:
    """Lower central series"""

    def test_abelian(self, Z4g: FiniteAlgebra) -> None:
        nilpotent, series = is_nilpotent(Z4g, Partition.total(4))
        assert nilpotent
        assert series == [Partition.total(4), Partition.identity(4)]

    def test_class_two(self, Z4s: FiniteAlgebra, part) -> None:
        nilpotent, series = is_nilpotent(Z4s, Partition.total(4))
        assert nilpotent
        assert series == [Partition.total(4), part("02|13", 4), Partition.identity(4)]

    def test_stalls(self, A2: FiniteAlgebra) -> None:
        nilpotent, series = is_nilpotent(A2, Partition.total(2))
        assert not nilpotent
        assert series == [Partition.total(2)]

    def test_zero(self, A2: FiniteAlgebra) -> None:
        zero = Partition.identity(2)
        assert is_nilpotent(A2, zero) == (True, [zero])


class TestCentralizer:
    """(0 : beta)"""

    def test_abelian(self, Z4g: FiniteAlgebra, part) -> None:
        assert centralizer(Z4g, part("02|13", 4)) == Partition.total(4)
        assert centralizer(Z4g, Partition.total(4)) == Partition.total(4)

    def test_z4_super(self, Z4s: FiniteAlgebra, part) -> None:
        assert centralizer(Z4s, Partition.total(4)) == part("02|13", 4)
        assert centralizer(Z4s, part("02|13", 4)) == Partition.total(4)

    def test_semilattice(self, A2: FiniteAlgebra) -> None:
        assert centralizer(A2, Partition.total(2)) == Partition.identity(2)

    def test_is_largest(self) -> None:
        for alg in corpus():
            for beta in con_lattice(alg):
                rho = centralizer(alg, beta)
                assert commutator(alg, rho, beta).is_identity
                for other in con_lattice(alg):
                    if commutator(alg, other, beta).is_identity:
                        assert other.leq(rho)


@pytest.mark.slow
class TestCommutatorSweep:
    """Ternary commutators over every corpus congruence triple"""

    def test_ternary_below_meet(self) -> None:
        for alg in corpus():
            lattice = con_lattice(alg)
            for a in lattice:
                for b in lattice:
                    for c in lattice:
                        value = higher_commutator(alg, [a, b, c])
                        assert value.leq(a.meet(b).meet(c))
                        assert value.leq(commutator(alg, b, c))

"""Tests for finite algebras, products, quotients, isomorphisms and algebra files"""

import itertools
from pathlib import Path

import numpy as np
import pytest

from src.congruence.partition import Partition
from src.core.algebra import FiniteAlgebra, close_subset, product, subalgebra
from src.core.corpus import bin2, builtin, corpus, z4_group
from src.core.homomorphism import (
    SortedHom,
    are_isomorphic,
    find_isomorphism,
    hs_closure,
    is_homomorphism,
    iter_isomorphisms,
    quotient,
    subuniverses,
)
from src.core.io import algebra_from_dict, algebra_to_dict, dump_algebra, load_algebra
from src.utils.errors import SignatureError, ValidationError


def relabel(alg: FiniteAlgebra, sigma: tuple) -> FiniteAlgebra:
    """Copy of alg with element a renamed sigma[a]"""
    inverse = [0] * alg.size
    for a, b in enumerate(sigma):
        inverse[b] = a
    functions = []
    for symbol, arity in alg.signature:
        functions.append((symbol, arity,
                          lambda *xs, s=symbol: sigma[alg.apply(s, [inverse[x] for x in xs])]))
    return FiniteAlgebra.from_functions(alg.size, functions, name=f"{alg.name}'")


class TestFiniteAlgebra:
    """Tables and basic accessors"""

    def test_table_indexing(self, Z4g: FiniteAlgebra) -> None:
        """First argument is most significant"""
        assert Z4g.apply("+", [3, 2]) == 1
        assert Z4g.table("+")[3 * 4 + 2] == 1
        assert Z4g.apply("-", [1]) == 3

    def test_equality_by_content(self) -> None:
        """Names do not take part in equality"""
        assert z4_group() == z4_group().renamed("other")
        assert hash(z4_group()) == hash(z4_group())

    def test_bin2_codes(self) -> None:
        assert list(bin2(0b0001).table("*")) == [0, 0, 0, 1]
        assert list(bin2(0b0110).table("*")) == [0, 1, 1, 0]
        assert len({bin2(code) for code in range(16)}) == 16

    def test_corpus_names(self) -> None:
        assert builtin("Z4s").signature.names == ("+", "-", "b")
        assert builtin("bin2_7") == bin2(7)
        with pytest.raises(ValidationError):
            builtin("Z5")
        assert len(corpus()) == 20


class TestProductAndSubalgebra:
    """Products are coordinatewise on mixed-radix codes"""

    def test_unary_product(self, Z2: FiniteAlgebra) -> None:
        assert product([Z2]) == Z2

    def test_binary_product(self, Z2: FiniteAlgebra) -> None:
        square = product([Z2, Z2])
        assert square.size == 4
        # (1,0) + (0,1) = (1,1)
        assert square.apply("+", [2, 1]) == 3

    def test_cube_size(self, Z4g: FiniteAlgebra) -> None:
        assert product([Z4g] * 3).size == 64

    def test_subalgebra(self, Z4g: FiniteAlgebra) -> None:
        sub, embedding = subalgebra(Z4g, [0, 2])
        assert embedding == (0, 2)
        assert sub.size == 2
        assert sub.apply("+", [1, 1]) == 0

    def test_subalgebra_not_closed(self, Z4g: FiniteAlgebra) -> None:
        with pytest.raises(ValidationError):
            subalgebra(Z4g, [0, 1])

    def test_close_subset(self, Z4g: FiniteAlgebra, A2: FiniteAlgebra) -> None:
        assert close_subset(Z4g, [2]) == frozenset({0, 2})
        assert close_subset(Z4g, [1]) == frozenset(range(4))
        assert close_subset(A2, [1]) == frozenset({1})

    def test_subuniverses(self, Z4g: FiniteAlgebra, A2: FiniteAlgebra) -> None:
        assert subuniverses(Z4g) == [frozenset({0}), frozenset({0, 2}), frozenset(range(4))]
        assert subuniverses(A2) == [frozenset({0}), frozenset({1}), frozenset({0, 1})]


class TestQuotient:
    """Quotients number classes by least element"""

    def test_quotient_z4(self, Z4g: FiniteAlgebra, Z2: FiniteAlgebra) -> None:
        q, nu = quotient(Z4g, Partition.from_blocks(4, [[0, 2], [1, 3]]))
        assert nu.labels == (0, 1, 0, 1)
        assert q.size == 2
        assert are_isomorphic(q, Z2)

    def test_identity_quotient(self, Z4g: FiniteAlgebra) -> None:
        q, nu = quotient(Z4g, Partition.identity(4))
        assert nu.labels == (0, 1, 2, 3)
        assert q == Z4g

    def test_total_quotient(self, Z4g: FiniteAlgebra) -> None:
        q, nu = quotient(Z4g, Partition.total(4))
        assert q.size == 1
        assert nu.m == 1

    def test_quotient_of_quotient(self, Z4g: FiniteAlgebra) -> None:
        """Factoring twice equals factoring by the larger congruence"""
        q, nu = quotient(Z4g, Partition.from_blocks(4, [[0, 2], [1, 3]]))
        twice, _ = quotient(q, Partition.total(2))
        once, _ = quotient(Z4g, Partition.total(4))
        assert twice == once

    def test_sorted_hom_validation(self, Z4g: FiniteAlgebra) -> None:
        with pytest.raises(ValidationError):
            SortedHom.from_labels(Z4g, [0, 1, 1, 0])
        with pytest.raises(ValidationError):
            SortedHom.from_labels(Z4g, [0, 2, 0, 2])
        chi = SortedHom.from_labels(Z4g, [0, 1, 0, 1])
        assert chi.classes() == ((0, 2), (1, 3))
        assert chi.kernel() == Partition.from_blocks(4, [[0, 2], [1, 3]])
        assert chi(3) == 1


class TestIsomorphism:
    """Backtracking isomorphism search"""

    def test_identity(self, Z2: FiniteAlgebra) -> None:
        assert find_isomorphism(Z2, Z2) == (0, 1)

    def test_relabeled(self, Z4g: FiniteAlgebra) -> None:
        other = relabel(Z4g, (0, 2, 1, 3))
        assert find_isomorphism(Z4g, other) == (0, 2, 1, 3)
        assert sorted(iter_isomorphisms(Z4g, other)) == [(0, 2, 1, 3), (0, 3, 1, 2)]

    def test_non_isomorphic(self, A2: FiniteAlgebra) -> None:
        xor = bin2(0b0110)
        assert find_isomorphism(xor, A2) is None

    def test_different_signatures(self, Z2: FiniteAlgebra, A2: FiniteAlgebra) -> None:
        with pytest.raises(SignatureError):
            find_isomorphism(Z2, A2)

    def test_different_sizes(self, Z2: FiniteAlgebra, Z4g: FiniteAlgebra) -> None:
        assert list(iter_isomorphisms(Z2, Z4g)) == []

    def test_automorphisms_are_homomorphisms(self) -> None:
        """Every map found is a bijective homomorphism"""
        for alg in corpus():
            for phi in iter_isomorphisms(alg, alg):
                assert sorted(phi) == list(range(alg.size))
                assert is_homomorphism(alg, alg, phi)

    def test_search_agrees_with_brute_force(self) -> None:
        for alg in corpus():
            brute = [p for p in itertools.permutations(range(alg.size))
                     if is_homomorphism(alg, alg, p)]
            assert list(iter_isomorphisms(alg, alg)) == brute


class TestHSClosure:
    """Quotients of subalgebras up to isomorphism"""

    def test_z2(self, Z2: FiniteAlgebra) -> None:
        members = hs_closure([Z2])
        assert [alg.size for alg in members] == [1, 2]

    def test_z4(self, Z4g: FiniteAlgebra, Z2: FiniteAlgebra) -> None:
        members = hs_closure([Z4g])
        assert [alg.size for alg in members] == [1, 2, 4]
        assert are_isomorphic(members[1], Z2)
        assert are_isomorphic(members[2], Z4g)

    def test_semilattice(self, A2: FiniteAlgebra) -> None:
        assert [alg.size for alg in hs_closure([A2])] == [1, 2]

    def test_cap(self, Z4g: FiniteAlgebra) -> None:
        from src.utils.errors import CapExceededError

        with pytest.raises(CapExceededError):
            hs_closure([Z4g], cap=2)


class TestAlgebraFiles:
    """Algebra JSON"""

    def test_round_trip(self, tmp_path: Path, Z4s: FiniteAlgebra) -> None:
        path = tmp_path / "z4s.json"
        dump_algebra(Z4s, path)
        loaded = load_algebra(path)
        assert loaded == Z4s
        assert loaded.name == "Z4s"

    def test_catalog_files_match_builders(self, catalog_dir: Path) -> None:
        for path in sorted(catalog_dir.glob("*.json")):
            alg = load_algebra(path)
            assert alg == builtin(alg.name), path.name

    def test_rejects_short_table(self) -> None:
        data = {"name": "bad", "size": 2,
                "operations": [{"symbol": "*", "arity": 2, "table": [0, 1]}]}
        with pytest.raises(ValidationError) as exc_info:
            algebra_from_dict(data)
        assert exc_info.value.details["errors"]

    def test_rejects_nullary(self) -> None:
        data = {"size": 2, "operations": [{"symbol": "c", "arity": 0, "table": [0]}]}
        with pytest.raises(ValidationError):
            algebra_from_dict(data)

    def test_dict_form(self, Z2: FiniteAlgebra) -> None:
        assert algebra_to_dict(Z2) == {
            "name": "Z2",
            "size": 2,
            "operations": [
                {"symbol": "+", "arity": 2, "table": [0, 1, 1, 0]},
                {"symbol": "-", "arity": 1, "table": [0, 1]},
            ],
        }

    def test_tables_are_read_only(self, Z2: FiniteAlgebra) -> None:
        with pytest.raises(ValueError):
            Z2.table("+")[0] = 1
        assert isinstance(Z2.table("+"), np.ndarray)

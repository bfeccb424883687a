"""Small algebras used as the built-in catalog and test corpus"""

from typing import Callable, Dict, List

from ..utils.errors import ValidationError
from .algebra import FiniteAlgebra, product


def z2() -> FiniteAlgebra:
    return FiniteAlgebra.from_functions(
        2, [("+", 2, lambda x, y: (x + y) % 2), ("-", 1, lambda x: (-x) % 2)], name="Z2"
    )


def z4_group() -> FiniteAlgebra:
    """The cyclic group of order 4 with + and unary minus"""
    return FiniteAlgebra.from_functions(
        4, [("+", 2, lambda x, y: (x + y) % 4), ("-", 1, lambda x: (-x) % 4)], name="Z4g"
    )


def z4_super() -> FiniteAlgebra:
    """Z4 with b(x, y) = 2xy; 2-supernilpotent but not abelian"""
    return FiniteAlgebra.from_functions(
        4,
        [
            ("+", 2, lambda x, y: (x + y) % 4),
            ("-", 1, lambda x: (-x) % 4),
            ("b", 2, lambda x, y: (2 * x * y) % 4),
        ],
        name="Z4s",
    )


def bin2(code: int) -> FiniteAlgebra:
    """One binary operation on {0, 1}; code read as a bit string is the table"""
    if not 0 <= code < 16:
        raise ValidationError(f"bin2 code must be in 0..15, got {code}")
    table = [(code >> (3 - i)) & 1 for i in range(4)]
    return FiniteAlgebra.from_tables(2, [("*", 2, table)], name=f"bin2_{code}")


def semilattice_a2() -> FiniteAlgebra:
    return bin2(0b0001).renamed("A2")


def lattice_l2() -> FiniteAlgebra:
    return FiniteAlgebra.from_functions(
        2, [("meet", 2, min), ("join", 2, max)], name="L2"
    )


def klein() -> FiniteAlgebra:
    return product([z2(), z2()]).renamed("Klein")


BUILTINS: Dict[str, Callable[[], FiniteAlgebra]] = {
    "Z2": z2,
    "Z4g": z4_group,
    "Z4s": z4_super,
    "A2": semilattice_a2,
    "L2": lattice_l2,
    "Klein": klein,
}


def builtin(name: str) -> FiniteAlgebra:
    """Corpus algebra by name; ``bin2_<code>`` for the two-element binary algebras"""
    if name in BUILTINS:
        return BUILTINS[name]()
    if name.startswith("bin2_") and name[5:].isdigit():
        return bin2(int(name[5:]))
    raise ValidationError(f"Unknown algebra '{name}'", {"known": sorted(BUILTINS)})


def bin2_corpus() -> List[FiniteAlgebra]:
    return [bin2(code) for code in range(16)]


def corpus() -> List[FiniteAlgebra]:
    """The 16 two-element binary algebras followed by Z4g, Z4s, Klein and A2"""
    return bin2_corpus() + [z4_group(), z4_super(), klein(), semilattice_a2()]

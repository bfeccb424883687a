"""Matrix algebras, higher commutators, centralizers and nilpotence"""

from .commutator import (
    centralizer,
    commutator,
    higher_commutator,
    is_abelian,
    is_k_supernilpotent,
    is_nilpotent,
)
from .matrix import CubeLabeling, check_dimension, cube_bit, face_labeling, matrix_algebra

__all__ = [
    "CubeLabeling",
    "centralizer",
    "check_dimension",
    "commutator",
    "cube_bit",
    "face_labeling",
    "higher_commutator",
    "is_abelian",
    "is_k_supernilpotent",
    "is_nilpotent",
    "matrix_algebra",
]

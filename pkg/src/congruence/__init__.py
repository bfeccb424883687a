"""Partitions, congruence generation and congruence lattices"""

from .lattice import (
    cg,
    con_lattice,
    covering_pairs,
    covers,
    interval,
    is_congruence,
    join,
    meet,
    monolith,
    permutes,
    principal,
    relcompose,
    require_congruence,
)
from .partition import Partition, UnionFind, format_partition, parse_partition, partition_from_json

__all__ = [
    "Partition",
    "UnionFind",
    "cg",
    "con_lattice",
    "covering_pairs",
    "covers",
    "format_partition",
    "interval",
    "is_congruence",
    "join",
    "meet",
    "monolith",
    "parse_partition",
    "partition_from_json",
    "permutes",
    "principal",
    "relcompose",
    "require_congruence",
]

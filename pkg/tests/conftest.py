#!/usr/bin/env python3

"""Test fixtures and configuration"""

import json
from pathlib import Path
from typing import Callable, List

import pytest

from src.config.models import Limits, LogConfig
from src.congruence.lattice import con_lattice
from src.congruence.partition import Partition, parse_partition
from src.construct.constructed import ConstructedAlgebra, construct_c
from src.core.algebra import FiniteAlgebra
from src.core.corpus import (
    corpus,
    klein,
    lattice_l2,
    semilattice_a2,
    z2,
    z4_group,
    z4_super,
)
from src.core.homomorphism import SortedHom, quotient
from src.monitoring.metrics import MetricsManager
from src.utils.logging import setup_logging

CATALOG_DIR = Path(__file__).resolve().parent.parent / "data" / "catalog"


@pytest.fixture(scope="session", autouse=True)
def logging_setup() -> None:
    """Quiet structured logging for the whole session"""
    setup_logging(LogConfig(level="WARNING"))


@pytest.fixture(scope="session")
def limits() -> Limits:
    """Default guardrails with a small closure cap so runaway tests fail fast"""
    return Limits(closure_cap=2_000_000, threads=2)


@pytest.fixture(scope="session")
def Z2() -> FiniteAlgebra:
    return z2()


@pytest.fixture(scope="session")
def Z4g() -> FiniteAlgebra:
    return z4_group()


@pytest.fixture(scope="session")
def Z4s() -> FiniteAlgebra:
    return z4_super()


@pytest.fixture(scope="session")
def A2() -> FiniteAlgebra:
    return semilattice_a2()


@pytest.fixture(scope="session")
def L2() -> FiniteAlgebra:
    return lattice_l2()


@pytest.fixture(scope="session")
def Klein() -> FiniteAlgebra:
    return klein()


@pytest.fixture(scope="session")
def part() -> Callable[[str, int], Partition]:
    """Partition from its bar form"""
    return lambda text, n: parse_partition(text, n)


@pytest.fixture(scope="session")
def z4_chi(Z4g: FiniteAlgebra) -> SortedHom:
    """Natural map of Z4g onto Z4g/{02|13}"""
    return quotient(Z4g, Partition.from_blocks(4, [[0, 2], [1, 3]]))[1]


@pytest.fixture(scope="session")
def z4_c(Z4g: FiniteAlgebra, z4_chi: SortedHom) -> ConstructedAlgebra:
    return construct_c(Z4g, z4_chi)


@pytest.fixture(scope="session")
def constructions() -> List[ConstructedAlgebra]:
    """Constructed algebras over every corpus congruence with at most 3 classes"""
    result = []
    for alg in corpus():
        for alpha in con_lattice(alg):
            if alpha.num_blocks <= 3:
                result.append(construct_c(alg, quotient(alg, alpha)[1]))
    return result


@pytest.fixture
def metrics() -> MetricsManager:
    return MetricsManager()


@pytest.fixture
def catalog_dir() -> Path:
    return CATALOG_DIR


@pytest.fixture
def write_instance(tmp_path: Path) -> Callable[..., Path]:
    """Write an instance file into a temporary directory"""
    def write(algebras: List[str], generators: List[List[int]], target: List[int],
              name: str = "instance.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(
            {"algebras": algebras, "generators": generators, "target": target}))
        return path

    return write


def pytest_configure(config):
    """Configure pytest"""
    config.addinivalue_line(
        "markers",
        "slow: mark test as slow running"
    )
    config.addinivalue_line(
        "markers",
        "integration: mark test as integration test"
    )


def pytest_collection_modifyitems(config, items):
    """Modify test collection"""
    if not config.getoption("--run-slow"):
        skip_slow = pytest.mark.skip(reason="need --run-slow option to run")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)

    if not config.getoption("--run-integration"):
        skip_integration = pytest.mark.skip(reason="need --run-integration option to run")
        for item in items:
            if "integration" in item.keywords:
                item.add_marker(skip_integration)


def pytest_addoption(parser):
    """Add custom options"""
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="run slow tests"
    )
    parser.addoption(
        "--run-integration",
        action="store_true",
        default=False,
        help="run integration tests"
    )

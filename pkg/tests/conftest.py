"""Shared test fixtures for the lpa-chen test suite."""

from __future__ import annotations

import pytest

from lpa_chen.algebra import LeavittAlgebra
from lpa_chen.config import AlgebraConfig, AppConfig, Config, PathsConfig, ReportsConfig
from lpa_chen.graph import Graph

from tests.builders import chain_graph, e_graph


# ------------------------------------------------------------------
# Config fixture
# ------------------------------------------------------------------

@pytest.fixture
def fake_config() -> Config:
    """Return a Config object with sensible test defaults."""
    return Config(
        app=AppConfig(name="Test LPA", log_level="DEBUG"),
        algebra=AlgebraConfig(field="rational"),
        paths=PathsConfig(max_len=3, probe_depth=4, kernel_horizon=None),
        reports=ReportsConfig(json_indent=2, witness_limit=3),
    )


# ------------------------------------------------------------------
# Graph fixtures
# ------------------------------------------------------------------

@pytest.fixture
def r1() -> Graph:
    return Graph(["v"], [("d", "v", "v")])


@pytest.fixture
def r2() -> Graph:
    return Graph(["v"], [("e", "v", "v"), ("f", "v", "v")])


@pytest.fixture
def sink_chain() -> Graph:
    """``u → v → w`` with ``w`` a sink."""
    return Graph(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")])


@pytest.fixture
def e_n():
    """Factory for the graphs Eₙ."""
    return e_graph


@pytest.fixture
def chain():
    """Factory for the branching-chain graphs."""
    return chain_graph


@pytest.fixture
def alg_r1(r1) -> LeavittAlgebra:
    return LeavittAlgebra(r1)


@pytest.fixture
def alg_r2(r2) -> LeavittAlgebra:
    return LeavittAlgebra(r2)

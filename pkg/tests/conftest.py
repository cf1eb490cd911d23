"""Shared fixtures: the small quotients every module exercises."""
from __future__ import annotations

import pytest

from ggs import DefiningVector, enumerate_quotient


@pytest.fixture(scope="session")
def gs() -> DefiningVector:
    return DefiningVector(3, (1, -1))


@pytest.fixture(scope="session")
def e10() -> DefiningVector:
    return DefiningVector(3, (1, 0))


@pytest.fixture(scope="session")
def p5alt() -> DefiningVector:
    return DefiningVector(5, (1, -1, 1, -1))


@pytest.fixture(scope="session")
def gs_g2(gs):
    return enumerate_quotient(gs, 2)


@pytest.fixture(scope="session")
def gs_g3(gs):
    return enumerate_quotient(gs, 3)


@pytest.fixture(scope="session")
def e10_g2(e10):
    return enumerate_quotient(e10, 2)

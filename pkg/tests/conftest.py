from __future__ import annotations

import pytest

from src.config.schema import ZdqConfig
from src.graph.builders import build_brute, build_g2, build_structured


@pytest.fixture(scope="session")
def config():
    return ZdqConfig()


@pytest.fixture(scope="session")
def g2():
    return build_g2()


@pytest.fixture(scope="session")
def brute3():
    return build_brute(3)


@pytest.fixture(scope="session")
def brute4():
    return build_brute(4)


@pytest.fixture(scope="session")
def structured3():
    return build_structured(3)


@pytest.fixture(scope="session")
def structured5():
    return build_structured(5)

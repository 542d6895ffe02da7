import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isec import CostConfig

import fixtures_data


@pytest.fixture(scope="session")
def default_cfg() -> CostConfig:
    return CostConfig()


@pytest.fixture(scope="session")
def case1_tax():
    return fixtures_data.case1_taxonomy()


@pytest.fixture(scope="session")
def case1_cfg() -> CostConfig:
    return fixtures_data.case1_config()

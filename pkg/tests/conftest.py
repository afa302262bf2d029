import pytest

from ariswpc import SystemConfig


@pytest.fixture
def default_cfg() -> SystemConfig:
    return SystemConfig()

import pytest

from zrl.config import PrecisionConfig
from zrl.zeta_zeros import find_zeros


@pytest.fixture(scope="session")
def cfg() -> PrecisionConfig:
    return PrecisionConfig()


@pytest.fixture(scope="session")
def zeros_to_100(cfg):
    # shared across explicit-formula tests; the acceptance test recomputes
    # its own copy so that its timing budget includes the zero search
    return find_zeros(100.0, cfg)

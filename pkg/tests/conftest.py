import math

import pytest

from alleemap import ModelParams

# Benchmark parameter sets: birth rate below, exactly at, and above the
# existence threshold nu = (9/4)*(2 + sqrt(3)) for the shared base rates.
BASE = dict(alpha=0.4, gamma=1.0, mu=0.6, d0=0.5)
BETA_AT = 2.25 * (2.0 + math.sqrt(3.0))


@pytest.fixture
def params_below() -> ModelParams:
    return ModelParams(beta=8.0, **BASE)


@pytest.fixture
def params_at() -> ModelParams:
    return ModelParams(beta=BETA_AT, **BASE)


@pytest.fixture
def params_above() -> ModelParams:
    return ModelParams(beta=9.0, **BASE)

import numpy as np
import pytest

from chebrank import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT everything once so timed assertions measure steady state
    _kernels.warmup()


def gaussian_system(seed: int, n: int, r: int):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, r)), rng.standard_normal(n)

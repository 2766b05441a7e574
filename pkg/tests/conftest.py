import numpy as np
import pytest

from ardw import ModelParams


def random_stable_params(rng: np.random.Generator, p: int | None = None) -> ModelParams:
    """Rejection-sample a parameter set well inside the stability region."""
    while True:
        pp = int(rng.integers(1, 6)) if p is None else p
        theta = rng.uniform(-1.0, 1.0, pp)
        norm = np.abs(theta).sum()
        if norm == 0.0:
            continue
        theta *= rng.uniform(0.05, 0.95) / norm
        if np.all(theta == 0.0) or abs(theta[-1]) < 1e-6:
            continue
        rho = rng.uniform(-0.95, 0.95)
        return ModelParams(p=pp, theta=theta, rho=rho)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

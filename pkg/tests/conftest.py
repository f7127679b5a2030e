import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

from edgekit.core import make_rng
from edgekit.learning import LocalProblem


def synthetic_problems(n_workers, dim, samples, noise=0.1, reg=1e-3, seed=0):
    """Per-worker least-squares tasks with genuinely different local optima."""
    rng = make_rng(seed)
    out = []
    for _ in range(n_workers):
        A = rng.standard_normal((samples, dim))
        x = rng.standard_normal(dim)
        b = A @ x + noise * rng.standard_normal(samples)
        out.append(LocalProblem(A=A, b=b, reg=reg))
    return out


def scalar_problems(targets, reg=0.0):
    """One (theta - a)^2 objective per target value."""
    return [LocalProblem.scalar_quadratic(a, reg=reg) for a in targets]


@pytest.fixture
def rng():
    return make_rng(12345)

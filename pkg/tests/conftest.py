import numpy as np
import pytest

from orthobound import CorridorSpec, Vector, admissible_point, random_family


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_vector(dim, rng, real=False, scale=1.0):
    u = rng.standard_normal(dim)
    if not real:
        u = u + 1j * rng.standard_normal(dim)
    return Vector(scale * u, real_mode=real)


def admissible_instance(rng, dim=6, count=3, real=False, slack=None):
    """Family, corridor, and an admissible vector for it."""
    fam = random_family(dim, count, rng, real=real)
    spec = CorridorSpec(mode="real" if real else "complex")
    corr = spec.sample(count, rng)
    s = rng.uniform() if slack is None else slack
    x = admissible_point(fam, corr, rng, s)
    return fam, corr, x

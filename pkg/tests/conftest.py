import numpy as np
import pytest

from polargd.geometry import haar_sample
from polargd.objective import make_problem


def rotation(theta):
    """2x2 counterclockwise rotation [[c, -s], [s, c]]."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def random_problem(rng, n, spectrum):
    """Problem with prescribed singular values and Haar factors."""
    spectrum = np.asarray(spectrum, dtype=float)
    u = haar_sample(n, rng)
    v = haar_sample(n, rng)
    return make_problem((u * spectrum) @ v.T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

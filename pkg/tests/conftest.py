import numpy as np
import pytest
from hypothesis import strategies as st

from harmsub import HarmonicSeries

SEED = 20261015


def unit_disk_coeffs(rng, n):
    r = np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def random_series(rng, max_degree=16, analytic=False, a0=None):
    """Degree 1..max_degree, coefficients uniform in the unit disk, b0 = 0."""
    n = int(rng.integers(1, max_degree + 1)) + 1
    a = unit_disk_coeffs(rng, n)
    b = np.zeros(n, complex) if analytic else unit_disk_coeffs(rng, n)
    b[0] = 0
    if a0 is not None:
        a[0] = a0
    return HarmonicSeries(a, b)


def random_disk_points(rng, n, r_max=0.9):
    return np.sqrt(rng.uniform(0, r_max**2, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


complexes = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def series_strategy(draw, max_degree=6):
    n = draw(st.integers(1, max_degree)) + 1
    a = draw(st.lists(complexes, min_size=n, max_size=n))
    b = draw(st.lists(complexes, min_size=n, max_size=n))
    return HarmonicSeries(a, b)


@st.composite
def disk_points(draw, r_max=0.9):
    r = draw(st.floats(0.0, r_max))
    t = draw(st.floats(0.0, 2 * np.pi))
    return r * np.exp(1j * t)

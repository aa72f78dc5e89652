import numpy as np
import pytest

from fibstego import _kernels
from fibstego.covers import generate_cover

BACKENDS = _kernels.available_backends()


@pytest.fixture(params=BACKENDS, ids=[b.BACKEND for b in BACKENDS])
def backend(request, monkeypatch):
    """Run the test once per kernel backend (pure, and compiled if built)."""
    mod = request.param
    for name in ("permutation", "splitmix64_stream", "sisr_encode", "sisr_decode"):
        monkeypatch.setattr(_kernels, name, getattr(mod, name))
    return mod


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def small_covers():
    return [generate_cover(128, 128, seed) for seed in range(6)]


GOLDEN_BLOCK = np.array([
    [30, 25, 26, 35],
    [35, 22, 29, 28],
    [31, 24, 22, 29],
    [30, 34, 32, 30],
])

GOLDEN_STREAM = (
    "0 00010110 100 0101 1000 0011 0100 1101 1101 0111 0110 1001 0010 0000 0111 1000 1100 1010 1000"
)

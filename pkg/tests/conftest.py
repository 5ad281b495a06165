import numpy as np
import pytest

from chaospip import Frame

from synthimg import standard_test_frames


@pytest.fixture(scope="session")
def table1_frames():
    """The five standard 512x512 grayscale test images (real or stand-in)."""
    return standard_test_frames()


@pytest.fixture
def make_frame():
    """Factory for random frames: make_frame(rng, width, height, channels)."""

    def _make(rng: np.random.Generator, width: int, height: int, channels: int) -> Frame:
        data = rng.integers(0, 256, size=width * height * channels, dtype=np.uint8)
        return Frame(width, height, channels, data.tobytes())

    return _make

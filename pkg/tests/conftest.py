"""Shared fixtures: seeded generators, phantoms and phantom directories."""

import numpy as np
import pytest

from harness.phantom import PhantomSpec, generate_phantom, phantom_series, write_phantoms
from imaging.types import GrayImage, Orientation


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def left_phantom():
    return generate_phantom(PhantomSpec(width=128, height=128, triangle_depth=0.45, triangle_width=0.45))


@pytest.fixture
def right_phantom():
    return generate_phantom(
        PhantomSpec(
            width=128,
            height=128,
            triangle_depth=0.45,
            triangle_width=0.45,
            orientation=Orientation.RIGHT,
        )
    )


@pytest.fixture(scope="session")
def phantom_specs():
    """20 noiseless phantoms, 10 Left and 10 Right."""
    return phantom_series(20, seed=7, size=128)


@pytest.fixture
def phantom_dir(tmp_path):
    """Two small phantoms with ground truth under gt/."""
    out_dir = tmp_path / "phantoms"
    write_phantoms(phantom_series(2, seed=3, size=96), out_dir)
    return out_dir


@pytest.fixture
def far_blob_image():
    """Left-leaning breast whose only bright region sits far from the corner."""
    pixels = np.zeros((64, 64), dtype=np.uint8)
    pixels[:, :40] = 100
    pixels[20:31, 20:31] = 200
    return GrayImage(pixels, 255)

import numpy as np
import pytest

from truncsm import geometry, presets


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def square():
    return geometry.unit_square()


@pytest.fixture
def polygon_preset():
    return presets.default_polygon()


def interior_points(domain, n, seed=0, box=None):
    """Rejection-sample n points uniform in the domain."""
    rng = np.random.default_rng(seed)
    box = box or geometry.bounding_box(domain)
    pts = []
    total = 0
    while total < n:
        U = box.lower + (box.upper - box.lower) * rng.random((4 * n + 64, box.dim))
        keep = geometry.contains_batch(domain, U)
        if keep.any():
            pts.append(U[keep])
            total += int(keep.sum())
    return np.concatenate(pts)[:n]

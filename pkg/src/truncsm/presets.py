"""Bundled domain presets used by the experiment drivers."""

from __future__ import annotations

import numpy as np

from .geometry import Polygon

# Non-convex observation window spanning roughly [-3, 3]^2 with a notch cut
# into the top edge; covers the neighborhoods of all four mixture centers.
DEFAULT_POLYGON_VERTICES = np.array([
    (-3.0, -3.0),
    (3.0, -3.0),
    (3.0, 3.0),
    (0.8, 3.0),
    (0.0, 1.2),
    (-0.8, 3.0),
    (-3.0, 3.0),
])

# Four mixture centers used by the synthetic polygon experiment.
GMM_TRUE_CENTERS = np.array([
    (2.0, 2.0),
    (-2.0, 2.0),
    (-2.0, -2.0),
    (2.0, -2.0),
])


def default_polygon() -> Polygon:
    return Polygon(DEFAULT_POLYGON_VERTICES)

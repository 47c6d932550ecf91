import random

import pytest

from plane_layers.geometry import PointSet


def random_point_set(rng: random.Random, n: int, extent: float = 1000.0) -> PointSet:
    """Uniform points with 6 decimal places, distinct by construction."""
    pts = set()
    while len(pts) < n:
        pts.add((f"{rng.uniform(0, extent):.6f}", f"{rng.uniform(0, extent):.6f}"))
    return PointSet(sorted(pts))


@pytest.fixture
def rng():
    return random.Random(20240813)

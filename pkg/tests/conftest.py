import numpy as np
import pytest

from geohac.metrics import EUCLIDEAN, PointSet


@pytest.fixture
def four_points() -> PointSet:
    """Planar line 0-1-2 plus an outlier; with h_max=3 the graph has 3 edges."""
    return PointSet(np.array([[0.0, 0.0], [0.0, 1.0], [0.0, 2.0], [0.0, 10.0]]), EUCLIDEAN)


def random_planar(rng: np.random.Generator, n: int, side: float = 50.0) -> PointSet:
    return PointSet(rng.uniform(0.0, side, size=(n, 2)), EUCLIDEAN)


def random_geodesic(rng: np.random.Generator, n: int) -> PointSet:
    coords = np.empty((n, 2))
    coords[:, 0] = np.degrees(np.arcsin(rng.uniform(-1.0, 1.0, size=n)))  # area-uniform
    coords[:, 1] = rng.uniform(-180.0, 180.0, size=n)
    from geohac.metrics import HAVERSINE

    return PointSet(coords, HAVERSINE)

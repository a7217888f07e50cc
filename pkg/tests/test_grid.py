import numpy as np
import pytest
from hypothesis import given, strategies as st

from avloc import SpatialGrid, make_grid, wrapped_distance

azimuths = st.floats(min_value=-600.0, max_value=600.0,
                     allow_nan=False, allow_infinity=False)


def test_wrapped_distance_below_threshold():
    assert wrapped_distance(0.0, 10.0, 301.0) == 10.0


def test_wrapped_distance_wraps_across_boundary():
    assert wrapped_distance(150.0, -150.0, 301.0) == 1.0


def test_wrapped_distance_identity():
    assert wrapped_distance(42.0, 42.0, 301.0) == 0.0


def test_wrapped_distance_never_exceeds_half_length():
    grid = make_grid()
    d = grid.distance(grid.centers[:, None], grid.centers[None, :])
    assert d.max() <= grid.length / 2
    assert d.min() >= 0


@given(azimuths, azimuths)
def test_wrapped_distance_symmetric(a, b):
    assert wrapped_distance(a, b, 301.0) == pytest.approx(wrapped_distance(b, a, 301.0))


@given(azimuths, azimuths, azimuths)
def test_wrapped_distance_triangle_inequality(a, b, c):
    ab = wrapped_distance(a, b, 301.0)
    bc = wrapped_distance(b, c, 301.0)
    ac = wrapped_distance(a, c, 301.0)
    assert ac <= ab + bc + 1e-9


def test_make_grid_default_covers_azimuth_range():
    grid = make_grid(301, -150, 150)
    assert grid.n == 301
    assert grid.centers[0] == -150
    assert grid.centers[300] == 150
    assert grid.length == 301
    assert grid.step == 1.0


def test_make_grid_small():
    grid = make_grid(3, -1, 1)
    assert list(grid.centers) == [-1.0, 0.0, 1.0]
    assert grid.length == 3.0


def test_make_grid_wrap_consistency():
    grid = make_grid(301, -150, 150)
    assert grid.distance(grid.centers[0], grid.centers[300]) == 1.0


def test_make_grid_rejects_bad_requests():
    with pytest.raises(ValueError):
        make_grid(1, -150, 150)
    with pytest.raises(ValueError):
        make_grid(10, 5, 5)


def test_grid_rejects_nonuniform_centers():
    with pytest.raises(ValueError):
        SpatialGrid(centers=np.array([0.0, 1.0, 3.0]), length=3.0)
    with pytest.raises(ValueError):
        SpatialGrid(centers=np.array([0.0, -1.0, -2.0]), length=3.0)

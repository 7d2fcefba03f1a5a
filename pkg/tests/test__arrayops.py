"""Test :mod:`~stirlab._arrayops`.

"""
import numpy as np
import pytest

from stirlab._arrayops import (
    EmptyGridError,
    OrderError,
    check_grid,
    geometric_grid,
    linear_grid,
)


@pytest.mark.parametrize(
    "grid, exception",
    [
        # Test case 1: empty grid
        ([], EmptyGridError),
        # Test case 2: unsorted grid
        ([1, 4, 2], OrderError),
        # Test case 3: repeated entry
        ([2, 2, 3], OrderError),
        # Test case 4: grid dimension
        ([[1, 2], [3, 4]], ValueError),
        # Test case 5: negative entry
        ([-1, 2], ValueError),
        # Test case 6: non-integer entry
        ([1, 2.5], ValueError),
        # Test case 7: boolean entry
        ([True, 2], ValueError),
        # Test case 8: valid grid
        (np.array([1, 3, 8]), None),
    ],
)
def test_check_grid(grid, exception):
    if exception is not None:
        with pytest.raises(exception):
            check_grid(grid)
        return

    grid_out = check_grid(grid)
    assert grid_out == [1, 3, 8]
    assert all(type(n) is int for n in grid_out)


def test_geometric_grid_powers():
    assert geometric_grid(1, 4096) == [2**k for k in range(13)]
    assert geometric_grid(3, 100) == [4, 8, 16, 32, 64]
    assert geometric_grid(1, 4096, parity='even') \
        == [2**k for k in range(1, 13)]
    assert geometric_grid(1, 4096, parity='odd') == [1]


def test_geometric_grid_points():
    assert geometric_grid(1, 1000, points=4) == [1, 10, 100, 1000]

    # Rounding collisions are merged.
    grid = geometric_grid(1, 4, points=20)
    assert grid == [1, 2, 3, 4]


@pytest.mark.parametrize(
    "n_min, n_max, points, parity, expected",
    [
        # Test case 1: exact spacing
        (1, 10, 4, None, [1, 4, 7, 10]),
        # Test case 2: rounding and de-duplication
        (2, 4, 10, None, [2, 3, 4]),
        # Test case 3: odd values only
        (2, 4, 10, 'odd', [3]),
        # Test case 4: single point
        (5, 9, 1, None, [5]),
    ],
)
def test_linear_grid(n_min, n_max, points, parity, expected):
    assert linear_grid(n_min, n_max, points, parity=parity) == expected


@pytest.mark.parametrize(
    "func, args, kwargs, exception",
    [
        # Test case 1: no power of two in range
        (geometric_grid, (3, 3), {}, EmptyGridError),
        # Test case 2: parity removes every value
        (linear_grid, (2, 2, 1), {'parity': 'odd'}, EmptyGridError),
        # Test case 3: reversed bounds
        (linear_grid, (10, 2, 4), {}, ValueError),
        # Test case 4: zero lower bound
        (geometric_grid, (0, 8), {}, ValueError),
        # Test case 5: non-positive number of points
        (geometric_grid, (1, 8), {'points': 0}, ValueError),
        # Test case 6: unknown parity
        (linear_grid, (1, 8, 8), {'parity': 'prime'}, ValueError),
    ],
)
def test_grid_invalid(func, args, kwargs, exception):
    with pytest.raises(exception):
        func(*args, **kwargs)

"""
Array Operations (:mod:`~stirlab._arrayops`)
==========================================================================

Construct and check integer evaluation grids.

.. autosummary::
    EmptyGridError
    OrderError
    check_grid
    geometric_grid
    linear_grid

"""
import numpy as np


class EmptyGridError(ValueError):
    """Exception raised when an evaluation grid is empty.

    """


class OrderError(ValueError):
    """Exception raised when the array order is incorrect.

    """


def check_grid(grid):
    """Check the input is a strictly increasing 1-d grid of non-negative
    integers.

    Parameters
    ----------
    grid : array_like of int
        Input grid.

    Returns
    -------
    list of int
        Grid as Python integers.

    Raises
    ------
    EmptyGridError
        When the grid is empty.
    OrderError
        When the grid is not strictly increasing.
    ValueError
        When the grid is not 1-d or contains non-integers or negative
        entries.

    """
    values = np.asarray(grid, dtype=object)
    if values.ndim != 1:
        raise ValueError("Evaluation grid is not 1-d.")
    if values.size == 0:
        raise EmptyGridError("Evaluation grid is empty.")

    for n in values:
        if isinstance(n, (bool, np.bool_)) \
                or not isinstance(n, (int, np.integer)):
            raise ValueError(
                f"Evaluation grid contains a non-integer: {n=}."
            )
        if n < 0:
            raise ValueError(
                f"Evaluation grid contains a negative entry: {n=}."
            )

    values = [int(n) for n in values]
    if any(b <= a for a, b in zip(values[:-1], values[1:])):
        raise OrderError("Evaluation grid is not strictly increasing.")

    return values


def _apply_parity(values, parity):
    if parity is None:
        return values
    if parity == 'even':
        return values[values % 2 == 0]
    if parity == 'odd':
        return values[values % 2 == 1]
    raise ValueError(f"Unknown parity: {parity=}.")


def _finalise(values, parity):
    values = _apply_parity(np.unique(values.astype(np.int64)), parity)
    if values.size == 0:
        raise EmptyGridError("Evaluation grid is empty after restrictions.")
    return [int(n) for n in values]


def _check_bounds(n_min, n_max):
    if n_min < 1 or n_max < n_min:
        raise ValueError(
            "Grid bounds must satisfy 1 ≤ n_min ≤ n_max: "
            f"{n_min=}, {n_max=}."
        )


def geometric_grid(n_min, n_max, points=None, parity=None):
    """Return a geometric grid of integers in [n_min, n_max].

    Parameters
    ----------
    n_min, n_max : int
        Grid bounds.
    points : int, optional
        Number of geometrically spaced points before rounding and
        de-duplication.  If `None` (default), the grid consists of the
        powers of two in [n_min, n_max].
    parity : {'even', 'odd', None}, optional
        Keep only values of this parity (default is `None`).

    Returns
    -------
    list of int
        Strictly increasing grid.

    Raises
    ------
    EmptyGridError
        When no value satisfies the restrictions.

    """
    _check_bounds(n_min, n_max)
    if points is None:
        exponents = np.arange(
            int(np.ceil(np.log2(n_min))), int(np.floor(np.log2(n_max))) + 1
        )
        values = np.array(
            [2**int(k) for k in exponents if n_min <= 2**int(k) <= n_max],
            dtype=np.int64
        )
    else:
        if points < 1:
            raise ValueError(f"Number of points must be positive: {points=}.")
        values = np.rint(np.geomspace(n_min, n_max, num=points))

    return _finalise(values, parity)


def linear_grid(n_min, n_max, points, parity=None):
    """Return a linearly spaced grid of integers in [n_min, n_max].

    Parameters
    ----------
    n_min, n_max : int
        Grid bounds.
    points : int
        Number of linearly spaced points before rounding and
        de-duplication.
    parity : {'even', 'odd', None}, optional
        Keep only values of this parity (default is `None`).

    Returns
    -------
    list of int
        Strictly increasing grid.

    """
    _check_bounds(n_min, n_max)
    if points < 1:
        raise ValueError(f"Number of points must be positive: {points=}.")

    return _finalise(np.rint(np.linspace(n_min, n_max, num=points)), parity)

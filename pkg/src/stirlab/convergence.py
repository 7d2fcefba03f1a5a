"""
Convergence Harness (:mod:`~stirlab.convergence`)
==========================================================================

Evaluate a sequence on an integer grid, measure its errors against the
limit, estimate the convergence rate, extrapolate and assemble
serialisable reports.

.. autosummary::
    SequenceSpec
    SequenceRow
    RateEstimate
    ConvergenceReport
    InsufficientRowsError
    DegenerateDifferencesError
    EvaluationError
    evaluate_grid
    estimate_rate
    aitken
    build_report
    check_monotone_approach
    format_real

"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import mpmath
import numpy as np
from scipy.stats import linregress
from tqdm import tqdm

from ._arrayops import check_grid
from ._tasktools import map_segments
from .exact_arith import to_real


#: Significant decimal digits of serialised reals.
SERIAL_DIGITS = 40


class InsufficientRowsError(ValueError):
    """Exception raised when too few rows are available for an
    estimate.

    """


class DegenerateDifferencesError(ZeroDivisionError):
    """Exception raised when every second difference in an Aitken
    transform vanishes.

    """


class EvaluationError(RuntimeError):
    """Exception raised when a sequence evaluator fails at a grid point.

    """

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


# ========================================================================
# Types
# ========================================================================

@dataclass(frozen=True)
class SequenceSpec:
    """Sequence to be evaluated.

    Parameters
    ----------
    name : str
        Sequence name.
    evaluator : callable
        Function ``(n, ctx) -> Real`` (or an exact rational).
    target : callable or Real
        Limit of the sequence, or a function ``ctx -> Real``.
    notes : str, optional
        Free-text notes (default is an empty string).
    flags : tuple of str, optional
        Discrepancy flags carried into the report (default is empty).
    monotone : bool, optional
        If `True` (default), the absolute error is expected to be
        non-increasing along the grid; otherwise only the last error is
        expected not to exceed the first.
    parameter : object, optional
        Sequence parameter such as a truncation level (default is
        `None`).

    """

    name: str
    evaluator: Callable
    target: object
    notes: str = ''
    flags: tuple = ()
    monotone: bool = True
    parameter: Optional[object] = None

    def resolve_target(self, ctx):
        if callable(self.target):
            return to_real(self.target(ctx), ctx)
        return to_real(self.target, ctx)


@dataclass(frozen=True)
class SequenceRow:
    """Evaluated term of a sequence.

    """

    n: int
    value: object
    abs_error: object
    rel_error: object


class RateEstimate(NamedTuple):
    """Least-squares slope of ln|error| against ln n.

    """

    slope: float
    r_squared: float


@dataclass
class ConvergenceReport:
    """Convergence report of a sequence on a grid.

    Attributes
    ----------
    name : str
        Sequence name.
    target : mpf
        Limit.
    rows : list of :class:`~stirlab.convergence.SequenceRow`
        Rows sorted by `n`.
    rate_estimate : :class:`~stirlab.convergence.RateEstimate` or None
        Present when at least four rows have a positive error.
    aitken_limit : mpf or None
        Aitken-extrapolated limit, when available.
    flags : list of str
        Discrepancy flags.
    monotone : bool
        Whether a monotone error approach is expected.
    parameter : object or None
        Sequence parameter.
    notes : str
        Free-text notes.

    """

    name: str
    target: object
    rows: list
    rate_estimate: Optional[RateEstimate] = None
    aitken_limit: Optional[object] = None
    flags: list = field(default_factory=list)
    monotone: bool = True
    parameter: Optional[object] = None
    notes: str = ''

    def to_dict(self):
        """Return the report as a JSON-serialisable dictionary.

        Reals are serialised as 40-significant-digit strings.

        """
        return {
            'experiment': self.name,
            'parameter': format_parameter(self.parameter),
            'target': format_real(self.target),
            'rows': [
                {
                    'n': row.n,
                    'value': format_real(row.value),
                    'abs_error': format_real(row.abs_error),
                    'rel_error': format_real(row.rel_error),
                }
                for row in self.rows
            ],
            'rate_estimate': (
                None if self.rate_estimate is None
                else self.rate_estimate._asdict()
            ),
            'aitken_limit': (
                None if self.aitken_limit is None
                else format_real(self.aitken_limit)
            ),
            'flags': list(self.flags),
            'notes': self.notes,
        }

    def csv_rows(self):
        """Return the report rows as lists of strings in the column order
        ``experiment, n, c, value, target, abs_error, rel_error``.

        """
        parameter = format_parameter(self.parameter) or ''
        target = format_real(self.target)
        return [
            [
                self.name, str(row.n), parameter, format_real(row.value),
                target, format_real(row.abs_error),
                format_real(row.rel_error),
            ]
            for row in self.rows
        ]


# ========================================================================
# Serialisation
# ========================================================================

def format_real(x, digits=SERIAL_DIGITS):
    """Serialise a real in scientific notation with a fixed number of
    significant digits.

    Parameters
    ----------
    x : mpf
        Real value.
    digits : int, optional
        Significant decimal digits (default is 40).

    Returns
    -------
    str
        Serialised value, e.g. ``'2.718...e+0'``.

    """
    if not hasattr(x, '_mpf_'):
        x = mpmath.mpmathify(x)
    return mpmath.nstr(
        x, digits, strip_zeros=False, min_fixed=0, max_fixed=0
    )


def format_parameter(parameter):
    """Serialise a sequence parameter (e.g. a truncation level).

    """
    if parameter is None:
        return None
    if isinstance(parameter, float) and parameter == float('inf'):
        return 'inf'
    return str(parameter)


# ========================================================================
# Evaluation
# ========================================================================

def _make_row(n, value, target, ctx):
    w = ctx.working
    value = to_real(value, ctx)
    abs_error = abs(w.mpf(value) - w.mpf(target))
    rel_error = abs_error / abs(w.mpf(target)) if target else abs_error
    return SequenceRow(
        n=n, value=value,
        abs_error=ctx.round(abs_error), rel_error=ctx.round(rel_error),
    )


def evaluate_grid(spec, grid, ctx, workers=1, progress=False, logger=None):
    """Evaluate a sequence on a grid.

    Parameters
    ----------
    spec : :class:`~stirlab.convergence.SequenceSpec`
        Sequence.
    grid : list of int
        Non-empty strictly increasing grid.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.
    workers : int, optional
        Number of worker threads (default is 1).
    progress : bool, optional
        If `True` (default is `False`), show a progress bar.
    logger : :class:`logging.Logger`, optional
        Logger (default is `None`).

    Returns
    -------
    list of :class:`~stirlab.convergence.SequenceRow`
        Rows sorted by `n`.

    Raises
    ------
    :class:`~stirlab._arrayops.EmptyGridError`
        When the grid is empty.
    :class:`~stirlab.convergence.EvaluationError`
        When the evaluator fails; the message names the grid point.

    """
    grid = check_grid(grid)
    target = spec.resolve_target(ctx)

    if logger:
        logger.info(
            "Evaluating %s on %d grid points in [%d, %d].",
            spec.name, len(grid), grid[0], grid[-1]
        )

    bar = tqdm(
        total=len(grid), desc=spec.name, disable=not progress, leave=False
    )
    lock = threading.Lock()

    def _evaluate_segment(segment):
        local = ctx.fork()
        rows = []
        for n in segment:
            try:
                value = spec.evaluator(n, local)
            except Exception as err:
                raise EvaluationError(
                    f"Sequence {spec.name!r} failed at n={n}: {err}", n=n
                ) from err
            rows.append(_make_row(n, value, target, local))
            with lock:
                bar.update()
        return rows

    try:
        rows = map_segments(_evaluate_segment, grid, workers=workers)
    finally:
        bar.close()

    return sorted(rows, key=lambda row: row.n)


def estimate_rate(rows):
    """Estimate the convergence rate as the least-squares slope of
    ln|error| against ln n.

    Parameters
    ----------
    rows : list of :class:`~stirlab.convergence.SequenceRow`
        Rows.

    Returns
    -------
    :class:`~stirlab.convergence.RateEstimate`
        Slope and coefficient of determination.

    Raises
    ------
    :class:`~stirlab.convergence.InsufficientRowsError`
        When fewer than four rows have a positive error.

    """
    usable = [row for row in rows if row.abs_error > 0]
    if len(usable) < 4:
        raise InsufficientRowsError(
            "Rate estimation needs at least 4 rows with positive error: "
            f"got {len(usable)}."
        )

    log_n = np.log([float(row.n) for row in usable])
    log_error = np.array([float(mpmath.log(row.abs_error)) for row in usable])
    fit = linregress(log_n, log_error)

    return RateEstimate(slope=float(fit.slope), r_squared=float(fit.rvalue**2))


def aitken(values):
    """Return the last valid Aitken Δ² transform of a sequence.

    Parameters
    ----------
    values : list of mpf or :class:`fractions.Fraction`
        Sequence values, at least three.

    Returns
    -------
    mpf or :class:`fractions.Fraction`
        x_(k+2) − (x_(k+2) − x_(k+1))² / (x_(k+2) − 2 x_(k+1) + x_k) for
        the last k with a nonzero denominator.

    Raises
    ------
    :class:`~stirlab.convergence.InsufficientRowsError`
        When fewer than three values are given.
    :class:`~stirlab.convergence.DegenerateDifferencesError`
        When every second difference vanishes.

    """
    values = list(values)
    if len(values) < 3:
        raise InsufficientRowsError(
            f"Aitken transform needs at least 3 values: got {len(values)}."
        )

    for k in range(len(values) - 3, -1, -1):
        x0, x1, x2 = values[k:k + 3]
        denominator = x2 - 2*x1 + x0
        if denominator != 0:
            return x2 - (x2 - x1)**2 / denominator

    raise DegenerateDifferencesError(
        "All second differences vanish in the Aitken transform."
    )


def build_report(spec, grid, ctx, workers=1, progress=False, logger=None):
    """Evaluate a sequence on a grid and assemble its convergence report.

    The rate estimate and the Aitken limit are omitted when the rows do
    not support them.

    """
    rows = evaluate_grid(
        spec, grid, ctx, workers=workers, progress=progress, logger=logger
    )

    try:
        rate_estimate = estimate_rate(rows)
    except InsufficientRowsError:
        rate_estimate = None

    try:
        aitken_limit = ctx.round(aitken([row.value for row in rows]))
    except (InsufficientRowsError, DegenerateDifferencesError):
        aitken_limit = None

    return ConvergenceReport(
        name=spec.name,
        target=spec.resolve_target(ctx),
        rows=rows,
        rate_estimate=rate_estimate,
        aitken_limit=aitken_limit,
        flags=list(spec.flags),
        monotone=spec.monotone,
        parameter=spec.parameter,
        notes=spec.notes,
    )


def check_monotone_approach(report):
    """Check the absolute errors of a report approach zero.

    Monotone reports require non-increasing errors along the grid; the
    others require only that the last error not exceed the first.

    Returns
    -------
    list of str
        Failure messages (empty when the check passes).

    """
    rows = report.rows
    if len(rows) < 2:
        return []

    if not report.monotone:
        if rows[-1].abs_error > rows[0].abs_error:
            return [
                f"{report.name}: error at n={rows[-1].n} exceeds error at "
                f"n={rows[0].n}."
            ]
        return []

    return [
        f"{report.name}: error increases from n={prev.n} to n={curr.n}."
        for prev, curr in zip(rows[:-1], rows[1:])
        if curr.abs_error > prev.abs_error
    ]

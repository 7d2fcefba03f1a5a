"""
Experiments (:mod:`~stirlab.experiments`)
==========================================================================

Registry mapping each experiment name to its primary sequence,
companion sequences (closed-form twins, printed variants and quadrature
oracles), default grid and acceptance checks.

.. autosummary::
    AcceptanceError
    Companion
    Experiment
    ExperimentResult
    EXPERIMENTS
    build_grid
    run_experiment

"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import classic_limits as cl
from . import clt_truncated as ct
from . import irwin_hall as ih
from . import laplace_bic as lb
from ._arrayops import geometric_grid, linear_grid
from .convergence import SequenceSpec, build_report, check_monotone_approach
from .exact_arith import (
    _log_factorial_working,
    constants,
    factorial,
    to_real,
)
from .parameters import InvalidParameterError


EXACT_PATH_FLAG = (
    "exact-arithmetic: alternating sums are evaluated in exact rationals "
    "before a single conversion to the working precision"
)

# Linear grids without an explicit number of points.
_DEFAULT_LINEAR_POINTS = 16

# Decade grids of the ratio experiments at c = 1.  The binomial error at
# 10³ exceeds the one at 10² because of the floor in ⌊c√n/2⌋.
POISSON_RATIO_DECADES = (10**2, 10**3, 10**4)
GAMMA_RATIO_DECADES = (10**2, 10**3, 10**4, 10**5, 10**6)
BINOMIAL_RATIO_DECADES = (10**2, 10**4)


class AcceptanceError(AssertionError):
    """Exception raised when an acceptance property of an experiment
    fails.

    """


@dataclass(frozen=True)
class Companion:
    """Companion sequence reported alongside a primary sequence.

    Parameters
    ----------
    spec : :class:`~stirlab.convergence.SequenceSpec`
        Sequence, named ``<experiment>/<variant>``.
    max_n : int, optional
        Largest grid point evaluated (default is `None`, meaning all).
    checked : bool, optional
        If `True` (default), the monotone-approach property is checked;
        printed variants with known discrepancies are not.
    grid : tuple of int, optional
        Fixed grid used instead of the run grid (default is `None`).
        Points outside the run grid bounds are dropped.

    """

    spec: SequenceSpec
    max_n: Optional[int] = None
    checked: bool = True
    grid: Optional[tuple] = None


@dataclass(frozen=True)
class Experiment:
    """Registered experiment.

    Parameters
    ----------
    name : str
        Experiment name.
    build : callable
        Function ``c -> (primary, companions)``.
    n_min, n_max : int
        Default grid bounds.
    parity : {'even', None}
        Grid parity restriction.
    n_limit : int, optional
        Largest admissible grid point.
    finite_c : bool
        Whether the truncation level must be finite.
    exact : bool
        Whether the primary sequence follows an exact-arithmetic path.
    checks : tuple of callable
        Acceptance checks ``(reports, ctx) -> list of str``.

    """

    name: str
    build: Callable
    n_min: int = 1
    n_max: int = 4096
    parity: Optional[str] = None
    n_limit: Optional[int] = None
    finite_c: bool = False
    exact: bool = False
    checks: tuple = ()


@dataclass
class ExperimentResult:
    """Reports and acceptance failures of an experiment run.

    """

    name: str
    reports: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def check(self):
        """Raise :class:`AcceptanceError` if any acceptance property
        failed.

        """
        if self.failures:
            raise AcceptanceError(
                f"Experiment {self.name!r} failed {len(self.failures)} "
                "acceptance check(s): " + "; ".join(self.failures)
            )


# ========================================================================
# Tolerances
# ========================================================================

def _half_precision(ctx):
    return ctx.mp.ldexp(1, 8 - ctx.bits // 2)


def _full_precision(ctx):
    return ctx.mp.ldexp(1, 16 - ctx.bits)


def _quadrature_precision(ctx):
    return max(ctx.mp.ldexp(1, 16 - ctx.bits // 2), ctx.mp.mpf('1e-18'))


# ========================================================================
# Checks
# ========================================================================

def _agreement(name, twin, tolerance, relative=False):
    """Check two sequences agree at their common grid points.

    """
    def check(reports, ctx):
        tol = tolerance(ctx)
        values = {row.n: row.value for row in reports[name].rows}
        failures = []
        for row in reports[twin].rows:
            if row.n not in values:
                continue
            gap = abs(values[row.n] - row.value)
            scale = abs(row.value) if relative else 1
            if gap > tol * scale:
                failures.append(
                    f"{twin}: differs from {name} by {ctx.mp.nstr(gap, 5)} "
                    f"at n={row.n}."
                )
        return failures

    return check


def _error_bound(name, bound, relative=False):
    """Check the error of each row against a bound ``(n, ctx) -> bound``.

    """
    def check(reports, ctx):
        failures = []
        for row in reports[name].rows:
            error = row.rel_error if relative else row.abs_error
            if error > bound(row.n, ctx):
                failures.append(
                    f"{name}: error {ctx.mp.nstr(error, 5)} exceeds its bound "
                    f"at n={row.n}."
                )
        return failures

    return check


def _robbins(name, scale):
    """Check value/scale lies in (e^(1/(12n+1)), e^(1/(12n))).

    """
    def check(reports, ctx):
        mp = ctx.mp
        failures = []
        for row in reports[name].rows:
            ratio = row.value / scale(ctx)
            lower = mp.exp(mp.mpf(1) / (12*row.n + 1))
            upper = mp.exp(mp.mpf(1) / (12*row.n))
            if not lower < ratio < upper:
                failures.append(
                    f"{name}: ratio {mp.nstr(ratio, 12)} is outside the "
                    f"Robbins bounds at n={row.n}."
                )
        return failures

    return check


def _wallis_identity(reports, ctx):
    failures = []
    for row in reports['wallis'].rows:
        n = row.n
        if n > 500:
            continue
        product = cl.wallis_partial(n) * (2*n + 1) \
            * cl.middle_binomial_prob(n)**2
        if product != 1:
            failures.append(f"wallis: exact identity fails at n={n}.")
    return failures


def _aitken_near(name, tolerance):
    def check(reports, ctx):
        report = reports[name]
        if report.aitken_limit is None or report.rows[-1].n < 64:
            return []
        gap = abs(report.aitken_limit - report.target)
        if gap > tolerance:
            return [
                f"{name}: Aitken limit is {ctx.mp.nstr(gap, 5)} away from "
                "the target."
            ]
        return []

    return check


def _strictly_decreasing(name):
    """Check the errors of a sequence strictly decrease along its grid.

    """
    def check(reports, ctx):
        rows = reports[name].rows
        return [
            f"{name}: error does not decrease from n={prev.n} to n={curr.n}."
            for prev, curr in zip(rows[:-1], rows[1:])
            if not curr.abs_error < prev.abs_error
        ]

    return check


def _final_error(name, tolerance, min_n):
    """Check the error at every grid point from `min_n` on is below
    `tolerance`.

    """
    def check(reports, ctx):
        failures = []
        for row in reports[name].rows:
            if row.n >= min_n and not row.abs_error < tolerance:
                failures.append(
                    f"{name}: error {ctx.mp.nstr(row.abs_error, 5)} is not "
                    f"below {tolerance} at n={row.n}."
                )
        return failures

    return check


def _irwin_hall_oracle(reports, ctx):
    failures = []
    for row in reports['irwin-hall-in/quadrature'].rows:
        oracle = ih.quadrature_oracle_In_exact(row.n)
        if ih.truncated_moment_In(row.n) != oracle:
            failures.append(
                f"irwin-hall-in/quadrature: exact moments differ at n={row.n}."
            )
    return failures


# ========================================================================
# Sequence builders
# ========================================================================

def _spec(name, evaluator, target, **kwargs):
    return SequenceSpec(name=name, evaluator=evaluator, target=target,
                        **kwargs)


def _const(value):
    return lambda ctx: ctx.mp.mpf(value)


def _build_stirling(c):
    primary = _spec(
        'stirling', cl.stirling_ratio, lambda ctx: constants(ctx).sqrt2pi
    )
    companions = [
        Companion(_spec(
            'stirling/median', cl.median_stirling_ratio, _const(1)
        )),
    ]
    return primary, companions


def _build_demoivre(c):
    primary = _spec(
        'demoivre', cl.demoivre_cn, lambda ctx: constants(ctx).inv_sqrt2pi
    )
    return primary, []


def _scaled_middle_binomial(n, ctx):
    return cl.classic_point('middle-binomial', n, ctx).value


def _build_middle_binomial(c):
    primary = _spec('middle-binomial', _scaled_middle_binomial, _const(1))
    return primary, []


def _build_wallis(c):
    primary = _spec(
        'wallis',
        lambda n, ctx: cl.classic_point('wallis', n, ctx).value,
        lambda ctx: ctx.mp.sqrt(2 / ctx.mp.pi),
    )
    return primary, []


def _build_trapezoid(c):
    primary = _spec(
        'trapezoid', cl.trapezoid_residual,
        lambda ctx: cl.classic_point('trapezoid', 1, ctx).target,
        flags=(cl.TRAPEZOID_FLAG,),
    )
    companions = [
        Companion(_spec(
            'trapezoid/difference', cl.trapezoid_difference, _const(0)
        )),
    ]
    return primary, companions


def _build_median_density(c):
    primary = _spec(
        'median-density',
        lambda m, ctx: cl.median_density_scaled(m, c, ctx),
        lambda ctx: cl.normal_density(to_real(c, ctx), ctx),
        parameter=c,
        notes="Index is m, with n = 2m + 1 uniforms; evaluated at z = c.",
    )
    return primary, []


def _normal_target(c):
    return lambda ctx: ct.normal_L(c, ctx)


def _half_gaussian(c):
    return lambda ctx: ctx.mp.exp(-to_real(c, ctx)**2 / 2)


def _build_poisson_truncated(c):
    flags = () if ct.is_infinite(c) else (ct.POISSON_FINITE_C_FLAG,)
    primary = _spec(
        'poisson-truncated', lambda n, ctx: ct.poisson_Ln(n, c, ctx),
        _normal_target(c), flags=flags, monotone=False, parameter=c,
    )
    companions = [
        Companion(_spec(
            'poisson-truncated/bruteforce',
            lambda n, ctx: ct.poisson_Ln_bruteforce(n, c, ctx),
            _normal_target(c), monotone=False, parameter=c,
        ), max_n=1024),
    ]
    return primary, companions


def _decades(primary, decades, c):
    # Decade grids are checked at c = 1 only.
    if c != 1:
        return []
    spec = _spec(
        f'{primary.name}/decades', primary.evaluator, primary.target,
        parameter=c, notes="Decade grid at c = 1.",
    )
    return [Companion(spec, grid=decades)]


def _build_poisson_ratio(c):
    primary = _spec(
        'poisson-ratio', lambda n, ctx: ct.poisson_product_ratio(n, c, ctx),
        _half_gaussian(c), monotone=False, parameter=c,
    )
    return primary, _decades(primary, POISSON_RATIO_DECADES, c)


def _poisson_mad_scaled(n, ctx):
    return ctx.round(ct.poisson_mad(n, ctx) / ctx.mp.sqrt(n))


def _build_poisson_mad(c):
    primary = _spec(
        'poisson-mad', _poisson_mad_scaled,
        lambda ctx: ctx.mp.sqrt(2 / ctx.mp.pi),
    )
    companions = [
        Companion(_spec(
            'poisson-mad/bruteforce',
            lambda n, ctx: ctx.round(
                ct.poisson_mad_bruteforce(n, ctx) / ctx.mp.sqrt(n)
            ),
            lambda ctx: ctx.mp.sqrt(2 / ctx.mp.pi),
        ), max_n=1024),
    ]
    return primary, companions


def _build_gamma_truncated(c):
    inv_sqrt2pi = lambda ctx: constants(ctx).inv_sqrt2pi  # noqa: E731
    primary = _spec(
        'gamma-truncated', lambda n, ctx: ct.gamma_Ln(n, c, ctx),
        _normal_target(c), flags=(ct.GAMMA_INF_FLAG,),
        monotone=ct.is_infinite(c), parameter=c,
    )
    companions = [
        Companion(_spec(
            'gamma-truncated/quadrature',
            lambda n, ctx: ct.gamma_Ln_bruteforce(n, c, ctx),
            _normal_target(c), monotone=False, parameter=c,
        ), max_n=256),
        Companion(_spec(
            'gamma-truncated/inf', ct.gamma_Ln_inf, inv_sqrt2pi,
            parameter=ct.INFINITY,
        )),
        Companion(_spec(
            'gamma-truncated/printed-limit', ct.gamma_Ln_inf,
            lambda ctx: constants(ctx).sqrt2pi, monotone=False,
            parameter=ct.INFINITY,
            notes="Printed limit, reported alongside.",
        ), checked=False),
    ]
    return primary, companions


def _build_gamma_ratio(c):
    primary = _spec(
        'gamma-ratio', lambda n, ctx: ct.gamma_exp_ratio(n, c, ctx),
        _half_gaussian(c), parameter=c,
    )
    return primary, _decades(primary, GAMMA_RATIO_DECADES, c)


def _build_binomial_truncated(c):
    inv_sqrt2pi = lambda ctx: constants(ctx).inv_sqrt2pi  # noqa: E731
    primary = _spec(
        'binomial-truncated', lambda n, ctx: ct.binomial_Ln(n, c, ctx),
        _normal_target(c), flags=(ct.BINOMIAL_CLOSED_FORM_FLAG,),
        monotone=ct.is_infinite(c), parameter=c,
    )
    companions = [
        Companion(_spec(
            'binomial-truncated/bruteforce',
            lambda n, ctx: ct.binomial_Ln_bruteforce(n, c, ctx),
            _normal_target(c), monotone=ct.is_infinite(c), parameter=c,
        )),
        Companion(_spec(
            'binomial-truncated/printed', ct.binomial_Ln_inf_printed,
            inv_sqrt2pi, monotone=False, parameter=ct.INFINITY,
            notes="Closed form as printed, reported alongside.",
        ), checked=False),
        Companion(_spec(
            'binomial-truncated/odd-variant',
            lambda n, ctx: ct.binomial_odd_variant(n + 1, ctx),
            inv_sqrt2pi, monotone=False, parameter=ct.INFINITY,
            notes="Evaluated at the odd index n + 1.",
        )),
    ]
    return primary, companions


def _build_binomial_ratio(c):
    primary = _spec(
        'binomial-ratio', lambda n, ctx: ct.binomial_ratio(n, c),
        _half_gaussian(c), monotone=False, parameter=c,
    )
    return primary, _decades(primary, BINOMIAL_RATIO_DECADES, c)


def _build_binomial_mad(c):
    inv_sqrt2pi = lambda ctx: constants(ctx).inv_sqrt2pi  # noqa: E731

    def exact_max(n, ctx):
        _, risk = ct.binomial_mad_exact_max(n)
        return to_real(risk, ctx) * ctx.mp.sqrt(n)

    primary = _spec(
        'binomial-mad', ct.binomial_mad_dn, inv_sqrt2pi,
        flags=(ct.BINOMIAL_MAD_FLAG,),
    )
    companions = [
        Companion(_spec(
            'binomial-mad/grid-max',
            lambda n, ctx: ct.binomial_mad_max(n, 101, ctx),
            inv_sqrt2pi, monotone=False,
        ), max_n=64),
        Companion(_spec(
            'binomial-mad/exact-max', exact_max, inv_sqrt2pi, monotone=False,
        ), max_n=64),
    ]
    return primary, companions


def _scaled_return(n, ctx):
    return ctx.round(
        to_real(ct.random_walk_return(n), ctx) * ctx.mp.sqrt(ctx.mp.pi * n)
    )


def _build_random_walk(c):
    two_over_sqrtpi = lambda ctx: 2 / ctx.mp.sqrt(ctx.mp.pi)  # noqa: E731
    primary = _spec(
        'random-walk', _scaled_return, _const(1),
        flags=(ct.RANDOM_WALK_FLAG,),
        notes="P(Y_2n = 0) scaled by sqrt(pi n).",
    )
    companions = [
        Companion(_spec(
            'random-walk/visits',
            lambda n, ctx: ctx.round(
                to_real(ct.random_walk_expected_visits(n), ctx)
                / ctx.mp.sqrt(n)
            ),
            two_over_sqrtpi,
            notes="E N_2n scaled by 1/sqrt(n).",
        )),
        Companion(_spec(
            'random-walk/return-printed',
            lambda n, ctx: ctx.round(
                ctx.mp.sqrt(ctx.mp.pi * n) / (ctx.mp.pi * ctx.mp.sqrt(n))
            ),
            _const(1), monotone=False,
            notes="Printed 1/(pi sqrt(n)) scaled by sqrt(pi n).",
        ), checked=False),
        Companion(_spec(
            'random-walk/visits-printed',
            lambda n, ctx: ctx.round(
                ct.random_walk_visits_printed(n, ctx) / ctx.mp.sqrt(n)
            ),
            two_over_sqrtpi, monotone=False,
            notes="Printed (1/sqrt(pi)) (1/2) sqrt(n) scaled by 1/sqrt(n).",
        ), checked=False),
    ]
    return primary, companions


def _build_irwin_hall_sn(c):
    primary = _spec(
        'irwin-hall-sn', ih.scaled_sn,
        lambda ctx: 1 / ctx.mp.sqrt(24 * ctx.mp.pi), flags=(EXACT_PATH_FLAG,),
    )
    companions = [
        Companion(_spec(
            'irwin-hall-sn/product',
            lambda n, ctx: ctx.round(
                ih.an_term(n, ctx) * ih.bn_term(n, ctx).bn
            ),
            lambda ctx: 1 / ctx.mp.sqrt(24 * ctx.mp.pi),
        )),
    ]
    return primary, companions


def _build_irwin_hall_in(c):
    inv_sqrt2pi = lambda ctx: constants(ctx).inv_sqrt2pi  # noqa: E731
    primary = _spec(
        'irwin-hall-in',
        lambda n, ctx: ih.standardized_truncated_moments(n, ctx)[0],
        lambda ctx: -constants(ctx).inv_sqrt2pi, flags=(EXACT_PATH_FLAG,),
        notes="(I_n - n/4)/(sigma sqrt(n)).",
    )
    companions = [
        Companion(_spec(
            'irwin-hall-in/upper',
            lambda n, ctx: ih.standardized_truncated_moments(n, ctx)[1],
            inv_sqrt2pi, notes="(J_n - n/4)/(sigma sqrt(n)).",
        )),
        Companion(_spec(
            'irwin-hall-in/quadrature',
            lambda n, ctx: ih.standardize_moment(
                ih.quadrature_oracle_In_exact(n), n, ctx
            ),
            lambda ctx: -constants(ctx).inv_sqrt2pi,
            notes="Piecewise-polynomial antidifferentiation oracle.",
        ), max_n=64),
    ]
    return primary, companions


def _build_irwin_hall_bn(c):
    primary = _spec(
        'irwin-hall-bn', lambda n, ctx: ih.bn_term(n, ctx).bn,
        lambda ctx: 1 / ctx.mp.sqrt(12), flags=(EXACT_PATH_FLAG,),
        monotone=False,
    )
    companions = [
        Companion(_spec(
            'irwin-hall-bn/display', lambda n, ctx: ih.bn_term(n, ctx).display,
            lambda ctx: 1 / ctx.mp.sqrt(3), monotone=False,
        )),
    ]
    return primary, companions


def _laplace_gamma_ratio(n, ctx):
    log_approx = lb.laplace_approx_log(lb.gamma_problem(n, ctx), ctx)
    w = ctx.working
    return ctx.round(
        w.exp(_log_factorial_working(n, ctx) - log_approx.log_magnitude)
    )


def _laplace_gamma_quadrature(n, ctx):
    integral = lb.integrate_exp(lb.gamma_problem(n, ctx), ctx)
    return ctx.round(ctx.working.mpf(integral) / factorial(n))


def _build_laplace_gamma(c):
    primary = _spec(
        'laplace-gamma', _laplace_gamma_ratio, _const(1),
        notes="n! divided by its Laplace approximation.",
    )
    companions = [
        Companion(_spec(
            'laplace-gamma/quadrature', _laplace_gamma_quadrature, _const(1),
            monotone=False, notes="Adaptive quadrature divided by n!.",
        ), max_n=64),
    ]
    return primary, companions


def _bic_builder(kind):
    name = f'bic-{kind}'

    def ratio(size, ctx):
        return lb.bic_case(lb.make_bic_case(kind, size), ctx).ratio

    def quadrature(size, ctx):
        case = lb.make_bic_case(kind, size)
        integral = lb.bic_integral_check(case, ctx)
        return ctx.round(integral / to_real(case.exact_side(), ctx))

    def build(c):
        flags = (lb.BINOMIAL_BIC_FLAG,) if kind == 'binomial' else ()
        primary = _spec(name, ratio, _const(1), flags=flags, monotone=False)
        companions = [
            Companion(_spec(
                f'{name}/quadrature', quadrature, _const(1), monotone=False,
                notes="Quadrature of the likelihood over the exact side.",
            ), max_n=64),
        ]
        return primary, companions

    return build


def _bic_bound(kind):
    if kind == 'binomial':
        return lambda n, ctx: ctx.mp.mpf(1) / n
    return lambda n, ctx: ctx.mp.mpf(2) / (12 * n)


# ========================================================================
# Registry
# ========================================================================

def _register():
    registry = [
        Experiment(
            'stirling', _build_stirling,
            checks=(
                _robbins('stirling', lambda ctx: constants(ctx).sqrt2pi),
            ),
        ),
        Experiment('demoivre', _build_demoivre),
        Experiment(
            'middle-binomial', _build_middle_binomial,
            checks=(
                _error_bound(
                    'middle-binomial', lambda n, ctx: ctx.mp.mpf(1) / (4*n)
                ),
            ),
        ),
        Experiment(
            'wallis', _build_wallis, n_max=8192,
            checks=(
                _error_bound(
                    'wallis', lambda n, ctx: ctx.mp.mpf(1) / (4*n),
                    relative=True
                ),
                _wallis_identity,
            ),
        ),
        Experiment('trapezoid', _build_trapezoid),
        Experiment('median-density', _build_median_density, finite_c=True),
        Experiment(
            'poisson-truncated', _build_poisson_truncated,
            checks=(
                _agreement(
                    'poisson-truncated', 'poisson-truncated/bruteforce',
                    _half_precision
                ),
            ),
        ),
        Experiment(
            'poisson-ratio', _build_poisson_ratio, n_max=2**20,
            finite_c=True, exact=True,
            checks=(
                _strictly_decreasing('poisson-ratio/decades'),
                _final_error('poisson-ratio/decades', 5e-2, min_n=10**4),
            ),
        ),
        Experiment(
            'poisson-mad', _build_poisson_mad,
            checks=(
                _agreement(
                    'poisson-mad', 'poisson-mad/bruteforce', _half_precision
                ),
            ),
        ),
        Experiment(
            'gamma-truncated', _build_gamma_truncated,
            checks=(
                _agreement(
                    'gamma-truncated', 'gamma-truncated/quadrature',
                    _half_precision
                ),
            ),
        ),
        Experiment(
            'gamma-ratio', _build_gamma_ratio, n_max=2**20, finite_c=True,
            checks=(
                _strictly_decreasing('gamma-ratio/decades'),
                _final_error('gamma-ratio/decades', 1e-2, min_n=10**6),
            ),
        ),
        Experiment(
            'binomial-truncated', _build_binomial_truncated, n_min=2,
            parity='even', exact=True,
            checks=(
                _agreement(
                    'binomial-truncated', 'binomial-truncated/bruteforce',
                    _full_precision, relative=True
                ),
            ),
        ),
        Experiment(
            'binomial-ratio', _build_binomial_ratio, n_max=2**16,
            finite_c=True, exact=True,
            checks=(
                _strictly_decreasing('binomial-ratio/decades'),
                _final_error('binomial-ratio/decades', 5e-2, min_n=10**4),
            ),
        ),
        Experiment(
            'binomial-mad', _build_binomial_mad, n_min=2, parity='even',
            exact=True,
            checks=(
                _agreement(
                    'binomial-mad/exact-max', 'binomial-mad/grid-max',
                    lambda ctx: ctx.mp.mpf('1e-3'), relative=True
                ),
            ),
        ),
        Experiment('random-walk', _build_random_walk, exact=True),
        Experiment(
            'irwin-hall-sn', _build_irwin_hall_sn, n_min=2, n_max=1024,
            parity='even', n_limit=ih.MAX_EXACT_N, exact=True,
            checks=(
                _agreement(
                    'irwin-hall-sn', 'irwin-hall-sn/product',
                    _full_precision, relative=True
                ),
                _error_bound(
                    'irwin-hall-sn',
                    lambda n, ctx: ctx.mp.inf if n < 256
                    else ctx.mp.mpf('2e-3')
                ),
            ),
        ),
        Experiment(
            'irwin-hall-in', _build_irwin_hall_in, n_min=2, n_max=1024,
            parity='even', n_limit=ih.MAX_EXACT_N, exact=True,
            checks=(_irwin_hall_oracle,),
        ),
        Experiment(
            'irwin-hall-bn', _build_irwin_hall_bn, n_min=2, n_max=1024,
            parity='even', n_limit=ih.MAX_EXACT_N, exact=True,
            checks=(
                _aitken_near('irwin-hall-bn', 1e-3),
                _final_error('irwin-hall-bn/display', 2e-3, min_n=512),
            ),
        ),
        Experiment(
            'laplace-gamma', _build_laplace_gamma, n_max=1024,
            checks=(
                _robbins('laplace-gamma', _const(1)),
                _error_bound(
                    'laplace-gamma/quadrature',
                    lambda n, ctx: _quadrature_precision(ctx)
                ),
            ),
        ),
    ]

    for kind in ('poisson-single', 'poisson-sample', 'exponential',
                 'binomial'):
        name = f'bic-{kind}'
        registry.append(Experiment(
            name, _bic_builder(kind), n_min=16, n_max=256,
            parity='even' if kind == 'binomial' else None,
            checks=(
                _error_bound(name, _bic_bound(kind)),
                _error_bound(
                    f'{name}/quadrature',
                    lambda n, ctx: _quadrature_precision(ctx)
                ),
            ),
        ))

    return {experiment.name: experiment for experiment in registry}


EXPERIMENTS = _register()
"""Registered experiments by name (excluding 'all').

"""

# ========================================================================
# Running
# ========================================================================

def build_grid(experiment, config):
    """Build the evaluation grid of an experiment from a run
    configuration, falling back to the experiment defaults.

    Raises
    ------
    :class:`~stirlab.parameters.InvalidParameterError`
        When the grid bounds are inconsistent or exceed the experiment
        limit.

    """
    n_min = config.n_min if config.n_min is not None else experiment.n_min
    n_max = config.n_max if config.n_max is not None else experiment.n_max
    if n_min > n_max:
        raise InvalidParameterError(
            f"Grid bounds are inconsistent for {experiment.name!r}: "
            f"{n_min=}, {n_max=}."
        )
    if experiment.n_limit is not None and n_max > experiment.n_limit:
        raise InvalidParameterError(
            f"Experiment {experiment.name!r} is limited to "
            f"n ≤ {experiment.n_limit}: {n_max=}."
        )

    try:
        if config.grid_kind == 'linear':
            return linear_grid(
                n_min, n_max, config.points or _DEFAULT_LINEAR_POINTS,
                parity=experiment.parity
            )
        return geometric_grid(
            n_min, n_max, points=config.points, parity=experiment.parity
        )
    except ValueError as err:
        raise InvalidParameterError(str(err)) from err


def run_experiment(name, config, ctx, logger=None):
    """Run an experiment and evaluate its acceptance checks.

    Parameters
    ----------
    name : str
        Experiment name (not 'all').
    config : :class:`~stirlab.parameters.RunConfig`
        Run configuration.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.
    logger : :class:`logging.LoggerAdapter`, optional
        Logger from :func:`~stirlab.logger.setup_logger` (default is
        `None`).

    Returns
    -------
    :class:`~stirlab.experiments.ExperimentResult`
        Reports (primary first) and acceptance failures.

    """
    experiment = EXPERIMENTS[name]
    if experiment.finite_c and math.isinf(config.c):
        raise InvalidParameterError(
            f"Experiment {name!r} requires a finite truncation level."
        )

    grid = build_grid(experiment, config)
    primary, companions = experiment.build(config.c)

    if logger:
        logger.info(
            "Running on %d grid points.", len(grid),
            experiment=name, exact=experiment.exact
        )

    def _report(spec, max_n=None, fixed=None):
        subgrid = [
            n for n in (fixed or grid)
            if grid[0] <= n <= grid[-1] and (max_n is None or n <= max_n)
        ]
        if not subgrid:
            return None
        return build_report(
            spec, subgrid, ctx, workers=config.workers,
            progress=config.progress, logger=logger
        )

    result = ExperimentResult(name=name)
    checked = {}

    report = _report(primary)
    result.reports.append(report)
    checked[primary.name] = True
    for companion in companions:
        report = _report(companion.spec, companion.max_n, companion.grid)
        if report is None:
            continue
        result.reports.append(report)
        checked[report.name] = companion.checked

    reports = {report.name: report for report in result.reports}
    for report in result.reports:
        if checked[report.name]:
            result.failures.extend(check_monotone_approach(report))
    for check in experiment.checks:
        try:
            result.failures.extend(check(reports, ctx))
        except KeyError:
            # Companion outside the grid.
            continue

    if logger:
        for failure in result.failures:
            logger.warning(failure, experiment=name)
        logger.info(
            "Completed with %d acceptance failure(s).", len(result.failures),
            experiment=name
        )

    return result

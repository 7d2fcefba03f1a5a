"""Test :mod:`~stirlab.laplace_bic`.

"""
import math
from fractions import Fraction

import pytest

from stirlab.exact_arith import DomainError, log_factorial, to_real
from stirlab.laplace_bic import (
    BIC_KINDS,
    Binomial,
    Exponential,
    LaplaceProblem,
    MaxDepthExceededError,
    NegativeCurvatureError,
    NoConvergenceError,
    PoissonSingle,
    QuadratureConfig,
    bic_case,
    bic_integral_check,
    find_mode,
    gamma_problem,
    gaussian_problem,
    integrate_exp,
    laplace_approx,
    laplace_approx_log,
    make_bic_case,
)


# ========================================================================
# Mode finding
# ========================================================================

def test_find_mode_gaussian(ctx):
    mode = find_mode(gaussian_problem(ctx, centre=3, curvature=2), ctx)
    assert abs(mode.x0 - 3) <= 8 * ctx.eps
    assert abs(mode.c - 2) <= 8 * ctx.eps
    assert mode.g_max == 0


def test_find_mode_gamma(ctx):
    n = 10**4
    mode = find_mode(gamma_problem(n, ctx), ctx)
    assert abs(mode.x0 - n) <= 1.e-20 * n
    assert abs(mode.c - ctx.mp.mpf(1) / n) <= 1.e-20 / n


def test_find_mode_finite_differences(ctx):
    # Only the log-integrand is supplied.
    w = ctx.working
    problem = LaplaceProblem(
        log_integrand=lambda x: 5 * w.log(x) - x,
        domain=(0, math.inf),
        initial_guess=1,
    )
    mode = find_mode(problem, ctx)
    assert abs(mode.x0 - 5) < 1.e-15
    assert abs(mode.c - ctx.mp.mpf(1) / 5) < 1.e-10


@pytest.mark.parametrize(
    "problem_kwargs, exception",
    [
        # Test case 1: convex log-integrand
        ({'log_integrand': lambda x: x**2}, NegativeCurvatureError),
        # Test case 2: unbounded log-integrand
        ({'log_integrand': lambda x: x}, NoConvergenceError),
        # Test case 3: initial guess outside the domain
        (
            {
                'log_integrand': lambda x: -x,
                'domain': (0, math.inf),
                'initial_guess': -1,
            },
            DomainError,
        ),
    ],
)
def test_find_mode_invalid(problem_kwargs, exception, ctx):
    with pytest.raises(exception):
        find_mode(LaplaceProblem(**problem_kwargs), ctx)


# ========================================================================
# Laplace approximation and quadrature
# ========================================================================

def test_laplace_approx_gaussian(ctx):
    # The approximation is exact for Gaussian integrands.
    value = laplace_approx(gaussian_problem(ctx, curvature=4), ctx)
    assert abs(value - ctx.mp.sqrt(ctx.mp.pi / 2)) <= 16 * ctx.eps


@pytest.mark.parametrize("n", [10, 100, 10**4])
def test_laplace_approx_gamma(n, ctx):
    # ln n! − ln Laplace lies within the Robbins bounds.
    approx = laplace_approx_log(gamma_problem(n, ctx), ctx)
    remainder = log_factorial(n, ctx) - approx.log_magnitude
    assert ctx.mp.mpf(1) / (12*n + 1) - 1.e-25 < remainder
    assert remainder < ctx.mp.mpf(1) / (12*n) + 1.e-25


@pytest.mark.parametrize("n", [5, 10, 25, 50])
def test_integrate_exp_gamma(n, ctx, test_logger):
    value = integrate_exp(gamma_problem(n, ctx), ctx, logger=test_logger)
    exact = math.factorial(n)
    assert abs(value - exact) <= 1.e-18 * exact


def test_integrate_exp_simpson(ctx):
    config = QuadratureConfig(rel_tolerance=1.e-10, rule='simpson')
    value = integrate_exp(gaussian_problem(ctx), ctx, config=config)
    target = ctx.mp.sqrt(2 * ctx.mp.pi)
    assert abs(value - target) <= 1.e-8 * target


def test_integrate_exp_max_depth(ctx):
    config = QuadratureConfig(
        rel_tolerance=1.e-30, max_depth=1, rule='simpson'
    )
    with pytest.raises(MaxDepthExceededError):
        integrate_exp(gaussian_problem(ctx), ctx, config=config)


@pytest.mark.parametrize(
    "kwargs",
    [
        # Test case 1: non-positive tolerance
        {'rel_tolerance': 0},
        # Test case 2: non-positive depth
        {'max_depth': 0},
        # Test case 3: tail cut too short
        {'tail_cut': 10},
        # Test case 4: unknown rule
        {'rule': 'trapezoid'},
    ],
)
def test_QuadratureConfig_invalid(kwargs):
    with pytest.raises(ValueError):
        QuadratureConfig(**kwargs)


# ========================================================================
# BIC case studies
# ========================================================================

@pytest.mark.parametrize(
    "kind", [kind for kind in BIC_KINDS if kind != 'binomial']
)
def test_bic_case_ratio(kind, ctx):
    errors = []
    for size in [16, 32, 64, 128, 256]:
        result = bic_case(make_bic_case(kind, size), ctx)
        error = result.ratio - 1
        assert 0 < error < ctx.mp.mpf(2) / (12 * size)
        errors.append(error)

    # The error roughly halves with every doubling of the sample size.
    for coarse, fine in zip(errors[:-1], errors[1:]):
        assert 1.8 < coarse / fine < 2.2


def test_bic_case_ratio_binomial(ctx):
    errors = []
    for size in [16, 32, 64, 128, 256]:
        result = bic_case(make_bic_case('binomial', size), ctx)
        error = 1 - result.ratio
        assert 0 < error <= ctx.mp.mpf(1) / size
        errors.append(error)

    for coarse, fine in zip(errors[:-1], errors[1:]):
        assert 1.8 < coarse / fine < 2.2


def test_bic_case_sides(ctx):
    result = bic_case(Binomial(n=2, x=1), ctx)
    assert result.exact_side == to_real(Fraction(1, 6), ctx)
    assert abs(result.bic_side - ctx.mp.sqrt(ctx.mp.pi) / 8) <= 8 * ctx.eps
    assert abs(result.ratio * result.bic_side - result.exact_side) \
        <= 16 * ctx.eps


@pytest.mark.parametrize(
    "case, exact",
    [
        (PoissonSingle(x=5), Fraction(1)),
        (Exponential(n=4, z=Fraction(5, 2)), Fraction(24) / Fraction(5, 2)**5),
        (Binomial(n=10, x=3), Fraction(6 * 5040, 39916800)),
    ],
)
def test_bic_integral_check(case, exact, ctx):
    assert case.exact_side() == exact

    value = bic_integral_check(case, ctx)
    assert abs(value - to_real(exact, ctx)) <= 1.e-15 * to_real(exact, ctx)


@pytest.mark.parametrize(
    "kind, size, exception",
    [
        # Test case 1: unknown kind
        ('gaussian', 8, ValueError),
        # Test case 2: binomial size too small
        ('binomial', 1, DomainError),
        # Test case 3: zero observation
        ('poisson-single', 0, DomainError),
    ],
)
def test_make_bic_case_invalid(kind, size, exception):
    with pytest.raises(exception):
        make_bic_case(kind, size)

"""Test :mod:`~stirlab.clt_truncated`.

"""
import math
import random
from fractions import Fraction

import pytest

from stirlab.clt_truncated import (
    INFINITY,
    DistributionKind,
    binomial_Ln,
    binomial_Ln_bruteforce,
    binomial_Ln_inf,
    binomial_Ln_inf_bruteforce,
    binomial_Ln_inf_printed,
    binomial_mad_dn,
    binomial_mad_exact_max,
    binomial_mad_max,
    binomial_mad_risk,
    binomial_odd_variant,
    binomial_ratio,
    gamma_exp_ratio,
    gamma_identity_check,
    gamma_Ln,
    gamma_Ln_bruteforce,
    gamma_Ln_inf,
    gamma_standardized_density,
    is_infinite,
    normal_L,
    poisson_Ln,
    poisson_Ln_bruteforce,
    poisson_mad,
    poisson_mad_bruteforce,
    poisson_partial_mass,
    poisson_product_ratio,
    random_walk_expected_visits,
    random_walk_return,
    random_walk_visits_printed,
    truncated_mean,
)
from stirlab.classic_limits import normal_density
from stirlab.exact_arith import DomainError, binomial, constants, to_real


HALF_GAUSSIAN_AT_1 = math.exp(-0.5)


def test_normal_L(ctx):
    expected = -math.expm1(-0.5) / math.sqrt(2 * math.pi)
    assert abs(float(normal_L(1, ctx)) - expected) < 1.e-15
    assert normal_L(INFINITY, ctx) == constants(ctx).inv_sqrt2pi
    assert is_infinite(INFINITY) and not is_infinite(Fraction(1))


@pytest.mark.parametrize("c", [Fraction(1, 2), 1, 2, INFINITY])
def test_poisson_Ln_telescoping(c, ctx):
    for n in range(1, 61):
        assert abs(
            poisson_Ln(n, c, ctx) - poisson_Ln_bruteforce(n, c, ctx)
        ) <= 1.e-25


@pytest.mark.parametrize("c", [1, INFINITY])
def test_poisson_Ln_limit(c, ctx):
    target = normal_L(c, ctx)
    errors = [abs(poisson_Ln(n, c, ctx) - target) for n in [100, 10**4]]
    assert errors[1] < errors[0]
    assert errors[1] < 1.e-2


def test_poisson_partial_mass(ctx):
    assert abs(poisson_partial_mass(1, 0, ctx) - ctx.mp.exp(-1)) \
        <= 8 * ctx.eps
    assert poisson_partial_mass(5, -1, ctx) == 0
    assert 1 - poisson_partial_mass(10, 60, ctx) < 1.e-20


def test_poisson_product_ratio(ctx):
    assert abs(float(poisson_product_ratio(100, 1, ctx)) - 0.5876) < 1.e-4

    errors = [
        abs(float(poisson_product_ratio(n, 1, ctx)) - HALF_GAUSSIAN_AT_1)
        for n in [10**2, 10**3, 10**4]
    ]
    assert all(b < a for a, b in zip(errors[:-1], errors[1:]))
    assert errors[-1] < 0.05


def test_poisson_mad(ctx):
    for n in range(1, 41):
        assert abs(poisson_mad(n, ctx) - poisson_mad_bruteforce(n, ctx)) \
            <= 1.e-25

    # E|Y_1 - 1| = 2/e.
    assert abs(poisson_mad(1, ctx) - 2 / ctx.mp.e) <= 8 * ctx.eps

    n = 10**4
    scaled = poisson_mad(n, ctx) / ctx.mp.sqrt(n)
    assert abs(scaled - ctx.mp.sqrt(2 / ctx.mp.pi)) < 1.e-2


def test_gamma_Ln_inf(ctx):
    # L_1(inf) = e^(-1).
    assert abs(gamma_Ln_inf(1, ctx) - ctx.mp.exp(-1)) <= 8 * ctx.eps

    target = constants(ctx).inv_sqrt2pi
    errors = [
        abs(gamma_Ln_inf(n, ctx) - target) for n in [1, 10, 100, 1000]
    ]
    assert all(b < a for a, b in zip(errors[:-1], errors[1:]))
    assert gamma_Ln(10, INFINITY, ctx) == gamma_Ln_inf(10, ctx)


@pytest.mark.parametrize("c", [Fraction(1, 2), 1, INFINITY])
def test_gamma_Ln_quadrature(c, ctx):
    for n in [1, 4, 16, 64]:
        assert abs(gamma_Ln(n, c, ctx) - gamma_Ln_bruteforce(n, c, ctx)) \
            <= 1.e-25


def test_gamma_exp_ratio(ctx):
    assert abs(float(gamma_exp_ratio(100, 1, ctx)) - 0.6256) < 1.e-4

    errors = [
        abs(float(gamma_exp_ratio(n, 1, ctx)) - HALF_GAUSSIAN_AT_1)
        for n in [10**2, 10**3, 10**4, 10**5, 10**6]
    ]
    assert all(b < a for a, b in zip(errors[:-1], errors[1:]))
    assert errors[-1] < 0.01

    with pytest.raises(DomainError):
        gamma_exp_ratio(10, -1, ctx)


def test_gamma_identity_check(ctx):
    for n, x in [(1, 1), (5, Fraction(7, 2)), (50, 60)]:
        assert abs(gamma_identity_check(n, x, ctx) - n) <= 64 * n * ctx.eps
    with pytest.raises(DomainError):
        gamma_identity_check(3, 0, ctx)


def test_gamma_identity_check_random(ctx):
    rng = random.Random(12345)
    for _ in range(100):
        n = rng.randint(1, 1000)
        x = Fraction(rng.randint(1, 10**6), 1000)
        gap = abs(gamma_identity_check(n, x, ctx) - n)
        assert gap <= 64 * n * ctx.eps, f"Identity fails at {n=}, {x=}."


def _half_binomial_pmf(n, j):
    return Fraction(binomial(n, j), 2**n)


def test_half_binomial_recurrence():
    for n in range(1, 101):
        for j in range(0, n + 1):
            b_prev = _half_binomial_pmf(n - 1, j - 1)
            b_next = _half_binomial_pmf(n - 1, j)
            assert _half_binomial_pmf(n, j) == (b_prev + b_next) / 2
            # The centred mass telescopes through the same pair.
            assert (j - Fraction(n, 2)) * _half_binomial_pmf(n, j) \
                == Fraction(n, 4) * (b_prev - b_next)


def test_gamma_standardized_density(ctx):
    for z in [0, Fraction(1, 2), -1]:
        value = gamma_standardized_density(10**4, z, ctx)
        assert abs(value - normal_density(to_real(z, ctx), ctx)) < 1.e-2
    assert gamma_standardized_density(4, -2, ctx) == 0


@pytest.mark.parametrize(
    "n, central, printed",
    [
        # L_n(inf) = (sqrt(n)/2) q_n with q_n = C(n-1, n/2-1) / 2^(n-1).
        (2, Fraction(1, 2), Fraction(0)),
        (4, Fraction(3, 8), Fraction(1, 4)),
    ],
)
def test_binomial_Ln_inf_small(n, central, printed, ctx):
    scale = ctx.mp.sqrt(n) / 2
    assert abs(binomial_Ln_inf(n, ctx) - scale * to_real(central, ctx)) \
        <= 8 * ctx.eps
    assert abs(
        binomial_Ln_inf_printed(n, ctx) - scale * to_real(printed, ctx)
    ) <= 8 * ctx.eps
    assert binomial_Ln_inf_bruteforce(n, ctx) == binomial_Ln_inf(n, ctx)


def test_binomial_Ln_enumeration(ctx):
    for n in range(2, 101, 2):
        for c in [Fraction(1, 2), 1, 2, INFINITY]:
            closed = binomial_Ln(n, c, ctx)
            brute = binomial_Ln_bruteforce(n, c, ctx)
            assert abs(closed - brute) <= 8 * ctx.eps * max(1, abs(brute))
        assert binomial_Ln(n, INFINITY, ctx) == binomial_Ln_inf(n, ctx)


def test_binomial_Ln_limit(ctx):
    target = constants(ctx).inv_sqrt2pi
    errors = [
        abs(binomial_Ln_inf(n, ctx) - target) for n in [4, 16, 64, 256, 1024]
    ]
    assert all(b < a for a, b in zip(errors[:-1], errors[1:]))

    # The printed form approaches the same limit.
    assert abs(binomial_Ln_inf_printed(1024, ctx) - target) < 1.e-3


def test_binomial_Ln_domain(ctx):
    with pytest.raises(DomainError):
        binomial_Ln(5, 1, ctx)
    with pytest.raises(DomainError):
        binomial_Ln_inf(7, ctx)


def test_binomial_odd_variant(ctx):
    assert abs(binomial_odd_variant(3, ctx) - ctx.mp.mpf(3) / 8) \
        <= 8 * ctx.eps
    assert abs(
        binomial_odd_variant(4097, ctx) - constants(ctx).inv_sqrt2pi
    ) < 1.e-3
    with pytest.raises(DomainError):
        binomial_odd_variant(4, ctx)


def test_binomial_ratio():
    assert binomial_ratio(100, 1) == Fraction(
        50 * 49 * 48 * 47 * 46, 51 * 52 * 53 * 54 * 55
    )
    assert abs(float(binomial_ratio(100, 1)) - 0.60906) < 1.e-5

    errors = [
        abs(float(binomial_ratio(n, 1)) - HALF_GAUSSIAN_AT_1)
        for n in [10**2, 10**4]
    ]
    assert errors[1] < errors[0]
    assert errors[1] < 0.05

    with pytest.raises(DomainError):
        binomial_ratio(1, 3)


@pytest.mark.parametrize(
    "n, p, expected",
    [
        # Test case 1: symmetric case
        (4, Fraction(1, 2), Fraction(3, 16)),
        # Test case 2: interior maximiser
        (4, Fraction(2, 5), Fraction(2592, 12500)),
        # Test case 3: degenerate probability
        (4, 0, Fraction(0)),
    ],
)
def test_binomial_mad_risk(n, p, expected):
    assert binomial_mad_risk(n, p) == expected


def test_binomial_mad_risk_invalid():
    with pytest.raises(DomainError):
        binomial_mad_risk(4, Fraction(3, 2))


@pytest.mark.parametrize(
    "n, p_max, risk_max",
    [
        (2, Fraction(1, 3), Fraction(8, 27)),
        (4, Fraction(2, 5), Fraction(2592, 12500)),
    ],
)
def test_binomial_mad_exact_max(n, p_max, risk_max):
    assert binomial_mad_exact_max(n) == (p_max, risk_max)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_binomial_mad_grid_max(n, ctx):
    dn = binomial_mad_dn(n, ctx)
    _, risk_max = binomial_mad_exact_max(n)
    exact_max = ctx.mp.sqrt(n) * ctx.mp.mpf(risk_max.numerator) \
        / risk_max.denominator

    grid_max = binomial_mad_max(n, 101, ctx)
    assert grid_max >= dn
    assert grid_max <= exact_max * (1 + 8 * ctx.eps)
    assert abs(grid_max - exact_max) <= 1.e-3 * exact_max

    # d_n is sqrt(n) D_n(1/2).
    assert abs(
        dn - ctx.mp.sqrt(n) * float(binomial_mad_risk(n, Fraction(1, 2)))
    ) < 1.e-12


def test_binomial_mad_dn_limit(ctx):
    target = constants(ctx).inv_sqrt2pi
    assert abs(binomial_mad_dn(4096, ctx) - target) < 1.e-3


def test_random_walk(ctx):
    assert random_walk_return(1) == Fraction(1, 2)
    assert random_walk_expected_visits(1) == Fraction(1, 2)
    assert random_walk_expected_visits(2) == Fraction(7, 8)

    for n in range(1, 50):
        assert random_walk_expected_visits(n) \
            == (2*n + 1) * random_walk_return(n) - 1

    n = 10**4
    scaled = float(random_walk_return(n)) * math.sqrt(math.pi * n)
    assert abs(scaled - 1) < 1.e-2

    printed = random_walk_visits_printed(n, ctx) / ctx.mp.sqrt(n)
    assert abs(printed - 1 / (2 * ctx.mp.sqrt(ctx.mp.pi))) <= 8 * ctx.eps


@pytest.mark.parametrize(
    "kind, n",
    [
        (DistributionKind.POISSON, 20),
        ('gamma', 20),
        (DistributionKind.BINOMIAL_HALF, 20),
    ],
)
def test_truncated_mean(kind, n, ctx):
    result = truncated_mean(kind, n, 1, ctx)
    assert result.c == Fraction(1)
    assert result.target == normal_L(1, ctx)
    assert abs(result.closed_form - result.brute_force) <= 1.e-25
    assert result.printed_form is None

    result = truncated_mean(kind, n, INFINITY, ctx, brute_force=False)
    assert result.brute_force is None
    if DistributionKind(kind) is DistributionKind.BINOMIAL_HALF:
        assert result.printed_form < result.closed_form

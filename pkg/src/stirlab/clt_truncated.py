"""
CLT Truncated Means (:mod:`~stirlab.clt_truncated`)
==========================================================================

Truncated means L_n(c) = E Z_n I(0 ≤ Z_n ≤ c) of standardised Poisson,
Gamma and symmetric binomial variables, their telescoped closed forms
and brute-force twins, the finite-c ratio limits, mean absolute
deviations and random-walk quantities.

.. autosummary::
    INFINITY
    DistributionKind
    TruncatedMeanResult
    normal_L
    truncated_mean

Poisson:

.. autosummary::
    poisson_Ln
    poisson_Ln_bruteforce
    poisson_partial_mass
    poisson_product_ratio
    poisson_mad
    poisson_mad_bruteforce

Gamma:

.. autosummary::
    gamma_Ln_inf
    gamma_Ln
    gamma_Ln_bruteforce
    gamma_exp_ratio
    gamma_identity_check
    gamma_standardized_density

Binomial:

.. autosummary::
    binomial_Ln_inf
    binomial_Ln_inf_bruteforce
    binomial_Ln_inf_printed
    binomial_Ln
    binomial_Ln_bruteforce
    binomial_odd_variant
    binomial_ratio
    binomial_mad_dn
    binomial_mad_risk
    binomial_mad_max
    binomial_mad_exact_max

Random walk:

.. autosummary::
    random_walk_return
    random_walk_expected_visits
    random_walk_visits_printed

"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .exact_arith import (
    DomainError,
    _check_even,
    _check_pos_int,
    _log_factorial_working,
    binomial,
    constants,
    factorial,
    rising_product,
    to_rational,
    to_real,
)


INFINITY = math.inf
"""Distinguished truncation level c = ∞.

"""

POISSON_FINITE_C_FLAG = (
    "poisson-finite-c: the finite-c telescoped form is evaluated with "
    "the left endpoint p_n(n); the printed display reads p_n(j)"
)
GAMMA_INF_FLAG = (
    "gamma-limit: L_n(inf) = sqrt(n) exp(-n) n^n / n! tends to "
    "1/sqrt(2 pi); the printed limit sqrt(2 pi) is reported alongside"
)
BINOMIAL_CLOSED_FORM_FLAG = (
    "binomial-closed-form: the printed closed form subtracts (1/2)^(n-1); "
    "exact enumeration over j = n/2..n gives (n/4) b_(n-1)(n/2 - 1), "
    "which is authoritative; the discrepancy vanishes as n grows"
)
BINOMIAL_MAD_FLAG = (
    "binomial-mad-maximum: sqrt(n) C(n-1, n/2-1) 2^-n equals sqrt(n) "
    "D_n(1/2); the maximum of D_n over p lies at p = nu/(n+1) and "
    "exceeds it by a factor tending to 1"
)
RANDOM_WALK_FLAG = (
    "random-walk: the return probability is targeted at 1/sqrt(pi n) "
    "(printed 1/(pi sqrt(n))); E N_2n / sqrt(n) is targeted at "
    "2/sqrt(pi) (printed (1/sqrt(pi)) (1/2) sqrt(n) scaling)"
)


class DistributionKind(enum.Enum):
    """Distribution families with telescoping truncated means.

    """

    POISSON = 'poisson'
    GAMMA = 'gamma'
    BINOMIAL_HALF = 'binomial-half'


@dataclass(frozen=True)
class TruncatedMeanResult:
    """Truncated mean L_n(c) by closed form and by brute force.

    Attributes
    ----------
    n : int
        Distribution parameter.
    c : :class:`fractions.Fraction` or float
        Truncation level, possibly :data:`INFINITY`.
    closed_form : mpf
        Telescoped closed form.
    target : mpf
        Limit L(c) = φ(0) − φ(c).
    brute_force : mpf or None
        Direct evaluation of the defining sum or integral.
    printed_form : mpf or None
        Closed form as printed, when it differs from the exact one.

    """

    n: int
    c: object
    closed_form: object
    target: object
    brute_force: Optional[object] = None
    printed_form: Optional[object] = None


# ========================================================================
# Truncation levels
# ========================================================================

def is_infinite(c):
    """Check whether a truncation level is :data:`INFINITY`.

    """
    if isinstance(c, float):
        return math.isinf(c)
    if hasattr(c, '_mpf_'):
        return bool(mpmath.isinf(c))
    return False


def _finite_level(c):
    q = to_rational(c)
    if q <= 0:
        raise DomainError(f"Truncation level must be positive: c={c}.")
    return q


def _floor_c_sqrt(n, c):
    """Return floor(c √n) exactly for rational c > 0.

    """
    q = _finite_level(c)
    return math.isqrt(q.numerator**2 * n) // q.denominator


def _half_index(n, c):
    """Return floor(n/2 + c √n / 2) exactly for rational c > 0.

    """
    q = _finite_level(c)
    p, d = q.numerator, q.denominator
    return (n * d + math.isqrt(p * p * n)) // (2 * d)


def _working(q, ctx):
    w = ctx.working
    q = Fraction(q)
    return w.mpf(q.numerator) / q.denominator


def normal_L(c, ctx):
    """Return the normal truncated mean L(c) = φ(0) − φ(c).

    Parameters
    ----------
    c : :class:`fractions.Fraction`, float or int
        Positive truncation level or :data:`INFINITY`.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        (2π)^(−1/2) (1 − exp(−c²/2)); 1/√(2π) for c = ∞.

    """
    if is_infinite(c):
        return constants(ctx).inv_sqrt2pi
    w = ctx.working
    c_ = _working(_finite_level(c), ctx)
    return ctx.round(-w.expm1(-c_**2 / 2) / w.sqrt(2 * w.pi))


# ========================================================================
# Poisson
# ========================================================================

def _log_poisson_pmf(n, j, ctx):
    w = ctx.working
    return -n + j * w.log(n) - _log_factorial_working(j, ctx)


def _log_poisson_peak_scaled(n, ctx):
    """ln(√n e^(−n) n^n / n!).

    """
    return ctx.working.log(n) / 2 + _log_poisson_pmf(n, n, ctx)


def poisson_Ln(n, c, ctx):
    """Return the Poisson truncated mean L_n(c) in telescoped form.

    Parameters
    ----------
    n : int
        Poisson mean (positive integer).
    c : :class:`fractions.Fraction`, float or int
        Positive truncation level or :data:`INFINITY`.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        √n p_n(n) for c = ∞; otherwise
        √n p_n(n) {1 − n^m / ((n+1)...(n+m))} with m = floor(c √n).

    See Also
    --------
    :data:`~stirlab.clt_truncated.POISSON_FINITE_C_FLAG`

    """
    _check_pos_int(n)
    w = ctx.working
    base = w.exp(_log_poisson_peak_scaled(n, ctx))
    if is_infinite(c):
        return ctx.round(base)

    m = _floor_c_sqrt(n, c)
    factor = 1 - Fraction(n**m, rising_product(n, m))
    return ctx.round(base * _working(factor, ctx))


def _poisson_upper_tail(n, ctx):
    """Sum (j − n) p_n(j) over j > n with a certified remainder.

    Terms are accumulated until both the last term and the geometric
    bound on the remainder fall below 2^(−bits/2) of the running sum.
    The successive term ratio ((j+1−n)/(j−n)) n/(j+1) decreases in j, so
    the bound term·ρ/(1 − ρ) dominates the remainder once ρ < 1.

    """
    w = ctx.working
    threshold = w.ldexp(1, -(ctx.bits // 2))

    pmf = w.exp(_log_poisson_pmf(n, n, ctx))
    total = w.mpf(0)
    j = n
    while True:
        j += 1
        pmf = pmf * n / j
        term = (j - n) * pmf
        total += term
        ratio = w.mpf(j + 1 - n) / (j - n) * n / (j + 1)
        if ratio < 1:
            remainder = term * ratio / (1 - ratio)
            if term <= threshold * total and remainder <= threshold * total:
                return total


def poisson_Ln_bruteforce(n, c, ctx):
    """Return the Poisson truncated mean L_n(c) by direct summation.

    For finite c the sum over n ≤ j ≤ n + floor(c √n) is exact in
    rationals up to the factor e^(−n)/√n; for c = ∞ the tail is summed
    with a certified remainder bound.

    Parameters
    ----------
    n : int
        Poisson mean (positive integer).
    c : :class:`fractions.Fraction`, float or int
        Positive truncation level or :data:`INFINITY`.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        L_n(c).

    """
    _check_pos_int(n)
    w = ctx.working
    if is_infinite(c):
        return ctx.round(_poisson_upper_tail(n, ctx) / w.sqrt(n))

    top = n + _floor_c_sqrt(n, c)
    numerator, factorial_ratio = 0, 1
    for j in range(top, n - 1, -1):
        # factorial_ratio = top!/j!
        numerator += (j - n) * n**j * factorial_ratio
        factorial_ratio *= j
    weighted = w.mpf(numerator) / w.mpf(factorial(top))

    return ctx.round(weighted * w.exp(-n) / w.sqrt(n))


def poisson_partial_mass(n, upper, ctx):
    """Return the Poisson(n) mass sum_{j=0}^{upper} p_n(j).

    The rational part is summed exactly so the result never exceeds 1
    beyond rounding.

    """
    _check_pos_int(n)
    if upper < 0:
        return ctx.mp.mpf(0)
    numerator, factorial_ratio = 0, 1
    for j in range(upper, -1, -1):
        numerator += n**j * factorial_ratio
        factorial_ratio *= max(j, 1)
    w = ctx.working
    return ctx.round(w.mpf(numerator) / w.mpf(factorial(upper)) * w.exp(-n))


def poisson_product_ratio(n, c, ctx):
    """Return n^m / ((n+1)...(n+m)), m = floor(c √n), which tends to
    exp(−c²/2).

    Parameters
    ----------
    n : int
        Positive integer.
    c : :class:`fractions.Fraction`, float or int
        Positive truncation level.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        Exact rational ratio converted to a real.

    """
    _check_pos_int(n)
    m = _floor_c_sqrt(n, c)
    return to_real(Fraction(n**m, rising_product(n, m)), ctx)


def poisson_mad(n, ctx):
    """Return the Poisson mean absolute deviation
    E|Y_n − n| = 2 e^(−n) n^(n+1) / n!.

    """
    _check_pos_int(n)
    w = ctx.working
    return ctx.round(
        w.exp(w.ln2 + w.log(n) + _log_poisson_pmf(n, n, ctx))
    )


def poisson_mad_bruteforce(n, ctx):
    """Return E|Y_n − n| by direct summation.

    The part below the mean is an exact finite sum; the part above it is
    summed with a certified remainder bound.

    """
    _check_pos_int(n)
    numerator, factorial_ratio = 0, 1
    for j in range(n - 1, -1, -1):
        # factorial_ratio = (n-1)!/j!
        numerator += (n - j) * n**j * factorial_ratio
        factorial_ratio *= max(j, 1)
    w = ctx.working
    lower = w.mpf(numerator) / w.mpf(factorial(n - 1)) * w.exp(-n)

    return ctx.round(lower + _poisson_upper_tail(n, ctx))


# ========================================================================
# Gamma
# ========================================================================

def _log_gamma_density(n, x, ctx):
    """ln g_n(x) for the Gamma(n, 1) density g_n(x) = x^(n−1) e^(−x) /
    (n−1)!.

    """
    w = ctx.working
    return (n - 1) * w.log(x) - x - _log_factorial_working(n - 1, ctx)


def gamma_Ln_inf(n, ctx):
    """Return the Gamma truncated mean L_n(∞) = √n e^(−n) n^n / n!.

    The limit is 1/√(2π).

    See Also
    --------
    :data:`~stirlab.clt_truncated.GAMMA_INF_FLAG`

    """
    _check_pos_int(n)
    return ctx.round(ctx.working.exp(_log_poisson_peak_scaled(n, ctx)))


def _gamma_exp_ratio_working(n, q, ctx):
    w = ctx.working
    c_ = _working(q, ctx)
    root_n = w.sqrt(n)
    return w.exp(n * w.log1p(c_ / root_n) - c_ * root_n)


def gamma_exp_ratio(n, c, ctx):
    """Return exp(−c √n) (1 + c/√n)^n, which tends to exp(−c²/2).

    Computed as exp(n ln(1 + c/√n) − c √n).

    """
    _check_pos_int(n)
    return ctx.round(_gamma_exp_ratio_working(n, _finite_level(c), ctx))


def gamma_Ln(n, c, ctx):
    """Return the Gamma truncated mean L_n(c).

    Parameters
    ----------
    n : int
        Shape parameter (positive integer).
    c : :class:`fractions.Fraction`, float or int
        Positive truncation level or :data:`INFINITY`.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        √n e^(−n) n^n / n! {1 − exp(−c √n) (1 + c/√n)^n}.

    Notes
    -----
    Follows from G_n(x) − G_(n+1)(x) = e^(−x) x^n / n! for the Gamma
    distribution functions.

    """
    if is_infinite(c):
        return gamma_Ln_inf(n, ctx)
    _check_pos_int(n)
    w = ctx.working
    base = w.exp(_log_poisson_peak_scaled(n, ctx))
    ratio = _gamma_exp_ratio_working(n, _finite_level(c), ctx)
    return ctx.round(base * (1 - ratio))


def gamma_Ln_bruteforce(n, c, ctx):
    """Return the Gamma truncated mean L_n(c) by quadrature of
    ((x − n)/√n) g_n(x) over [n, n + c √n].

    """
    _check_pos_int(n)
    w = ctx.working
    root_n = w.sqrt(n)
    if is_infinite(c):
        level, upper = w.inf, w.inf
    else:
        level = _working(_finite_level(c), ctx)
        upper = n + level * root_n

    def integrand(x):
        return (x - n) / root_n * w.exp(_log_gamma_density(n, x, ctx))

    points = [w.mpf(n)] + [
        n + k * root_n for k in (1, 2, 4, 8, 16, 32) if k < level
    ] + [upper]

    return ctx.round(w.quad(integrand, points))


def gamma_identity_check(n, x, ctx):
    """Return x g_n(x) / g_(n+1)(x) in log space; equals n.

    """
    _check_pos_int(n)
    w = ctx.working
    x = w.mpf(to_real(x, ctx))
    if x <= 0:
        raise DomainError(f"Evaluation point must be positive: {x=}.")
    return ctx.round(w.exp(
        w.log(x)
        + _log_gamma_density(n, x, ctx)
        - _log_gamma_density(n + 1, x, ctx)
    ))


def gamma_standardized_density(n, z, ctx):
    """Return the density of (Y − n)/√n for Y ~ Gamma(n, 1),

    h_n(z) = (√n / n!) n^n e^(−n) (1 + z/√n)^(n−1) e^(−√n z),

    which tends to φ(z).

    """
    _check_pos_int(n)
    w = ctx.working
    z = w.mpf(to_real(z, ctx))
    root_n = w.sqrt(n)
    if z <= -root_n:
        return ctx.mp.mpf(0)
    return ctx.round(w.exp(
        _log_poisson_peak_scaled(n, ctx)
        + (n - 1) * w.log1p(z / root_n)
        - root_n * z
    ))


# ========================================================================
# Binomial
# ========================================================================

def _scale_by_root(q, factor, n, ctx):
    """Return factor · √n · q for an exact rational q.

    """
    w = ctx.working
    return ctx.round(factor * w.sqrt(n) * _working(q, ctx))


def binomial_Ln_inf(n, ctx):
    """Return the binomial(n, ½) truncated mean L_n(∞) from the exact
    telescoped sum (n/4) b_(n−1)(n/2 − 1).

    Parameters
    ----------
    n : int
        Even positive integer.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        ½ √n b_(n−1)(n/2 − 1).

    Raises
    ------
    :class:`~stirlab.exact_arith.DomainError`
        When `n` is odd.

    See Also
    --------
    binomial_Ln_inf_printed, binomial_Ln_inf_bruteforce

    """
    _check_even(n)
    return _scale_by_root(
        Fraction(binomial(n - 1, n//2 - 1), 2**(n - 1)), Fraction(1, 2), n,
        ctx
    )


def _binomial_upper_excess(n, top=None):
    """Exact sum_{n/2 ≤ j ≤ top} (j − n/2) b_n(j).

    """
    top = n if top is None else min(top, n)
    total = sum((2*j - n) * binomial(n, j) for j in range(n//2, top + 1))
    return Fraction(total, 2**(n + 1))


def binomial_Ln_inf_bruteforce(n, ctx):
    """Return L_n(∞) for the binomial(n, ½) case by exact enumeration.

    """
    _check_even(n)
    return _scale_by_root(_binomial_upper_excess(n) / n, Fraction(2), n, ctx)


def binomial_Ln_inf_printed(n, ctx):
    """Return ½ √n {b_(n−1)(n/2 − 1) − (½)^(n−1)}, the closed form as
    printed.

    """
    _check_even(n)
    return _scale_by_root(
        Fraction(binomial(n - 1, n//2 - 1) - 1, 2**(n - 1)), Fraction(1, 2),
        n, ctx
    )


def binomial_Ln(n, c, ctx):
    """Return the binomial(n, ½) truncated mean L_n(c),

    ½ √n {b_(n−1)(n/2 − 1) − b_(n−1)(j_n)},  j_n = floor(n/2 + c √n / 2).

    Parameters
    ----------
    n : int
        Even positive integer.
    c : :class:`fractions.Fraction`, float or int
        Positive truncation level or :data:`INFINITY`.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        L_n(c).

    """
    _check_even(n)
    top = n if is_infinite(c) else _half_index(n, c)
    difference = binomial(n - 1, n//2 - 1) - binomial(n - 1, top)
    return _scale_by_root(
        Fraction(difference, 2**(n - 1)), Fraction(1, 2), n, ctx
    )


def binomial_Ln_bruteforce(n, c, ctx):
    """Return the binomial(n, ½) truncated mean L_n(c) by exact
    enumeration of sum_{n/2 ≤ j ≤ j_n} ((j − n/2)/(½ √n)) b_n(j).

    """
    _check_even(n)
    top = n if is_infinite(c) else _half_index(n, c)
    return _scale_by_root(
        _binomial_upper_excess(n, top) / n, Fraction(2), n, ctx
    )


def binomial_odd_variant(n, ctx):
    """Return ½ (n+1)^(1/2) C(n, (n−1)/2) (½)^n for odd n, which tends to
    1/√(2π).

    """
    _check_pos_int(n)
    if n % 2 == 0:
        raise DomainError(f"`n` must be odd: {n=}.")
    return _scale_by_root(
        Fraction(binomial(n, (n - 1)//2), 2**n), Fraction(1, 2), n + 1, ctx
    )


def binomial_ratio(n, c):
    """Return C(n, floor(n/2 + c √n / 2)) / C(n, floor(n/2)) exactly.

    Parameters
    ----------
    n : int
        Positive integer.
    c : :class:`fractions.Fraction`, float or int
        Positive truncation level.

    Returns
    -------
    :class:`fractions.Fraction`
        Exact ratio, which tends to exp(−c²/2).

    Raises
    ------
    :class:`~stirlab.exact_arith.DomainError`
        When the numerator index exceeds `n` (c too large for `n`).

    """
    _check_pos_int(n)
    index = _half_index(n, c)
    if index > n:
        raise DomainError(
            f"Truncation level is too large for this `n`: {n=}, c={c}."
        )
    return Fraction(binomial(n, index), binomial(n, n//2))


def binomial_mad_dn(n, ctx):
    """Return d_n = √n C(n−1, n/2 − 1) (½)^n for even n.

    This is √n D_n(½); see :data:`BINOMIAL_MAD_FLAG` for its relation to
    the maximum risk.

    """
    _check_even(n)
    return _scale_by_root(
        Fraction(binomial(n - 1, n//2 - 1), 2**n), 1, n, ctx
    )


def _mad_numerator(n, k, scale):
    """Numerator of D_n(k/scale) over the common denominator
    n scale^(n+1).

    """
    return sum(
        abs(j * scale - k * n) * binomial(n, j)
        * k**j * (scale - k)**(n - j)
        for j in range(n + 1)
    )


def binomial_mad_risk(n, p):
    """Return the exact binomial absolute-loss risk
    D_n(p) = E_p |X/n − p| for rational p.

    Parameters
    ----------
    n : int
        Positive integer.
    p : :class:`fractions.Fraction`, int or str
        Success probability in [0, 1].

    Returns
    -------
    :class:`fractions.Fraction`
        D_n(p).

    """
    _check_pos_int(n)
    p = to_rational(p)
    if not 0 <= p <= 1:
        raise DomainError(f"Probability must lie in [0, 1]: p={p}.")
    k, scale = p.numerator, p.denominator
    return Fraction(_mad_numerator(n, k, scale), n * scale**(n + 1))


def _binomial_mad_grid_search(n, grid_size, refinements):
    scale = grid_size - 1
    best_k = max(
        range(scale + 1), key=lambda k: _mad_numerator(n, k, scale)
    )
    for _ in range(refinements):
        scale *= 10
        centre = best_k * 10
        best_k = max(
            range(max(centre - 10, 0), min(centre + 10, scale) + 1),
            key=lambda k: _mad_numerator(n, k, scale)
        )

    return Fraction(best_k, scale), \
        Fraction(_mad_numerator(n, best_k, scale), n * scale**(n + 1))


def binomial_mad_max(n, grid_size, ctx, refinements=3):
    """Return √n max_p D_n(p) over an exact rational p-grid with local
    refinement.

    Parameters
    ----------
    n : int
        Positive integer.
    grid_size : int
        Number of equally spaced grid points on [0, 1] (at least 2).
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.
    refinements : int, optional
        Refinement rounds around the best point, each 10 times denser
        (default is 3).

    Returns
    -------
    mpf
        √n times the largest grid risk, a lower bound of the maximum.

    """
    _check_pos_int(n)
    if grid_size < 2:
        raise DomainError(f"Grid must have at least two points: {grid_size=}.")
    _, risk = _binomial_mad_grid_search(n, grid_size, refinements)
    return to_real(risk, ctx) * ctx.mp.sqrt(n)


def binomial_mad_exact_max(n):
    """Return the exact maximum of D_n(p) over p and its location.

    Notes
    -----
    By de Moivre's formula E|X − np| = 2ν C(n, ν) p^ν (1−p)^(n−ν+1) with
    ν = floor(np) + 1, the risk on each interval [(ν−1)/n, ν/n) peaks at
    p = ν/(n+1), so the maximum is attained at one of these points.

    Returns
    -------
    p_max : :class:`fractions.Fraction`
        Maximising probability.
    risk_max : :class:`fractions.Fraction`
        Maximum risk.

    """
    _check_pos_int(n)
    candidates = [Fraction(nu, n + 1) for nu in range(1, n + 1)]
    p_max = max(candidates, key=lambda p: binomial_mad_risk(n, p))
    return p_max, binomial_mad_risk(n, p_max)


# ========================================================================
# Random walk
# ========================================================================

def random_walk_return(n):
    """Return the exact return probability P(Y_2n = 0) = C(2n, n) 2^(−2n)
    of the simple symmetric random walk.

    """
    _check_pos_int(n)
    return Fraction(binomial(2*n, n), 4**n)


def random_walk_expected_visits(n):
    """Return the exact expected number of returns to zero up to time 2n,
    E N_2n = sum_{i=1}^n P(Y_2i = 0).

    """
    _check_pos_int(n)
    central, numerator = 1, 0
    for i in range(1, n + 1):
        central = central * 2 * (2*i - 1) // i
        numerator = 4 * numerator + central
    return Fraction(numerator, 4**n)


def random_walk_visits_printed(n, ctx):
    """Return (1/√π) ½ √n, the expected-visits approximation as printed.

    """
    _check_pos_int(n)
    w = ctx.working
    return ctx.round(w.sqrt(n) / (2 * w.sqrt(w.pi)))


# ========================================================================
# Dispatch
# ========================================================================

def truncated_mean(kind, n, c, ctx, brute_force=True):
    """Evaluate the truncated mean L_n(c) of a distribution family.

    Parameters
    ----------
    kind : :class:`~stirlab.clt_truncated.DistributionKind` or str
        Distribution family.
    n : int
        Distribution parameter (even for the binomial family).
    c : :class:`fractions.Fraction`, float or int
        Positive truncation level or :data:`INFINITY`.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.
    brute_force : bool, optional
        If `True` (default), also evaluate the brute-force twin.

    Returns
    -------
    :class:`~stirlab.clt_truncated.TruncatedMeanResult`
        Closed form, target and optional brute-force and printed values.

    """
    kind = DistributionKind(kind)
    printed = None
    if kind is DistributionKind.POISSON:
        closed, twin = poisson_Ln, poisson_Ln_bruteforce
    elif kind is DistributionKind.GAMMA:
        closed, twin = gamma_Ln, gamma_Ln_bruteforce
    else:
        closed, twin = binomial_Ln, binomial_Ln_bruteforce
        if is_infinite(c):
            printed = binomial_Ln_inf_printed(n, ctx)

    return TruncatedMeanResult(
        n=n,
        c=c if is_infinite(c) else _finite_level(c),
        closed_form=closed(n, c, ctx),
        target=normal_L(c, ctx),
        brute_force=twin(n, c, ctx) if brute_force else None,
        printed_form=printed,
    )

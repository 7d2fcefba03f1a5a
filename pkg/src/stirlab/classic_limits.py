"""
Classic Limits (:mod:`~stirlab.classic_limits`)
==========================================================================

The Stirling ratio, de Moivre's middle-binomial constant, the Wallis
partial product, the trapezoidal residual and the scaled density of the
median of uniforms.

.. autosummary::
    ClassicSequencePoint
    stirling_ratio
    demoivre_cn
    middle_binomial_prob
    wallis_partial
    trapezoid_residual
    trapezoid_difference
    median_density_scaled
    median_stirling_ratio
    normal_density
    classic_point

"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact_arith import (
    DomainError,
    _check_nonneg_int,
    _check_pos_int,
    _log_factorial_working,
    binomial,
    constants,
    to_real,
)


#: Flag recorded in reports of the trapezoidal residual.
TRAPEZOID_FLAG = (
    "trapezoid-constant: the trapezoidal residual ln n! - (1/2) ln n - "
    "(n ln n - n + 1) tends to ln sqrt(2 pi) - 1, not to 0 as an O(1/n) "
    "remainder would imply; the constant cancels in differences "
    "t_2n - t_n"
)


@dataclass(frozen=True)
class ClassicSequencePoint:
    """One term of a classic sequence.

    Attributes
    ----------
    n : int
        Sequence index.
    value : mpf
        Real value of the term.
    target : mpf
        Limit of the sequence.
    exact : :class:`fractions.Fraction` or None
        Exact rational equal to `value` when the term itself is rational.
    base : :class:`fractions.Fraction` or None
        Unscaled rational a scaled term is computed from, e.g.
        P(Y_2n = n) for the middle-binomial term.

    """

    n: int
    value: object
    target: object
    exact: Optional[Fraction] = None
    base: Optional[Fraction] = None


def normal_density(z, ctx):
    """Standard normal density φ(z).

    """
    w = ctx.working
    z = w.mpf(z)
    return ctx.round(w.exp(-z**2 / 2) / w.sqrt(2 * w.pi))


# ========================================================================
# Stirling
# ========================================================================

def stirling_ratio(n, ctx):
    """Return the Stirling ratio r_n = n!/(n^(n+1/2) e^(-n)).

    Parameters
    ----------
    n : int
        Positive integer.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        r_n, which decreases strictly to √(2π).

    Notes
    -----
    Evaluated in log space as exp(ln n! − (n + ½) ln n + n) at working
    precision.

    """
    _check_pos_int(n)
    w = ctx.working
    log_ratio = (
        _log_factorial_working(n, ctx) - w.mpf(2*n + 1) / 2 * w.log(n) + n
    )
    return ctx.round(w.exp(log_ratio))


def median_stirling_ratio(n, ctx):
    """Return √(2πn) {(2n)!/n!} 2^(−2n−1/2) / n!, which tends to 1.

    This is the ratio that results from equating the exact median density
    peak with its normal limit.

    """
    _check_pos_int(n)
    w = ctx.working
    log_ratio = (
        w.log(2 * w.pi * n) / 2
        + _log_factorial_working(2*n, ctx)
        - 2 * _log_factorial_working(n, ctx)
        - w.mpf(4*n + 1) / 2 * w.ln2
    )
    return ctx.round(w.exp(log_ratio))


# ========================================================================
# de Moivre and Wallis
# ========================================================================

def _middle_binomial(n):
    return Fraction(binomial(2*n, n), 4**n)


def middle_binomial_prob(n):
    """Return the exact middle-binomial probability C(2n, n) 2^(−2n).

    Parameters
    ----------
    n : int
        Positive integer.

    Returns
    -------
    :class:`fractions.Fraction`
        P(Y_2n = n) for Y_2n ~ Binomial(2n, ½).

    """
    _check_pos_int(n)
    return _middle_binomial(n)


def demoivre_cn(n, ctx):
    """Return de Moivre's constant sequence c_n = ½ √(2n+1) C(2n, n)
    2^(−2n).

    Parameters
    ----------
    n : int
        Non-negative integer.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        c_n, which tends to 1/√(2π).

    """
    _check_nonneg_int(n)
    rational_factor, radicand = _demoivre_factors(n)
    w = ctx.working
    return ctx.round(
        w.mpf(rational_factor.numerator) / rational_factor.denominator
        * w.sqrt(radicand)
    )


def _demoivre_factors(n):
    """Split c_n into its exact rational factor and the radicand of its
    irrational factor.

    """
    return Fraction(1, 2) * _middle_binomial(n), 2*n + 1


def wallis_partial(n):
    """Return the exact Wallis partial product
    w_n = prod_{j=1}^n (2j)^2 / ((2j−1)(2j+1)).

    Parameters
    ----------
    n : int
        Non-negative integer.

    Returns
    -------
    :class:`fractions.Fraction`
        w_n, with w_0 = 1.

    """
    _check_nonneg_int(n)
    numerator, denominator = 1, 1
    for j in range(1, n + 1):
        numerator *= 4 * j * j
        denominator *= (2*j - 1) * (2*j + 1)
    return Fraction(numerator, denominator)


# ========================================================================
# Trapezoid
# ========================================================================

def trapezoid_residual(n, ctx):
    """Return the trapezoidal residual
    t_n = ln n! − ½ ln n − (n ln n − n + 1).

    Parameters
    ----------
    n : int
        Positive integer.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        t_n, which tends to ln √(2π) − 1.

    See Also
    --------
    :data:`~stirlab.classic_limits.TRAPEZOID_FLAG`

    """
    _check_pos_int(n)
    return ctx.round(_trapezoid_residual_working(n, ctx))


def _trapezoid_residual_working(n, ctx):
    w = ctx.working
    log_n = w.log(n)
    return _log_factorial_working(n, ctx) - log_n / 2 - (n * log_n - n + 1)


def trapezoid_difference(n, ctx):
    """Return t_2n − t_n, in which the limiting constant cancels.

    """
    _check_pos_int(n)
    return ctx.round(
        _trapezoid_residual_working(2*n, ctx)
        - _trapezoid_residual_working(n, ctx)
    )


# ========================================================================
# Median of uniforms
# ========================================================================

def median_density_scaled(m, z, ctx):
    """Return the exact density of Z_n = 2√n (M_n − ½), n = 2m + 1, where
    M_n is the median of n independent uniforms.

    Parameters
    ----------
    m : int
        Non-negative integer.
    z : mpf, float, int or :class:`fractions.Fraction`
        Evaluation point with |z| ≤ √n.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        ½ √n C(2m, m) 2^(−2m) (1 − z²/n)^m.

    Raises
    ------
    :class:`~stirlab.exact_arith.DomainError`
        When |z| > √n.

    """
    _check_nonneg_int(m, name='m')
    n = 2*m + 1
    w = ctx.working
    z = to_real(z, ctx)
    if abs(z) > ctx.mp.sqrt(n):
        raise DomainError(
            f"Evaluation point is outside the support: {z=}, {n=}."
        )
    peak = _middle_binomial(m)
    return ctx.round(
        w.sqrt(n) / 2 * (w.mpf(peak.numerator) / peak.denominator)
        * (1 - w.mpf(z)**2 / n)**m
    )


# ========================================================================
# Dispatch
# ========================================================================

def _wallis_point(n, ctx):
    base = wallis_partial(n)
    w = ctx.working
    value = ctx.round(1 / w.sqrt(to_real(base, ctx)))
    return value, base, ctx.round(w.sqrt(2 / w.pi))


def classic_point(name, n, ctx):
    """Evaluate one term of a named classic sequence.

    Parameters
    ----------
    name : {'stirling', 'demoivre', 'middle-binomial', 'wallis', \
'trapezoid', 'middle-binomial-prob', 'wallis-partial'}
        Sequence name.  The middle-binomial term is scaled as
        P(Y_2n = n) √(πn) and the Wallis term as 1/√(w_n); the
        '-prob' and '-partial' names give the unscaled rationals,
        with limits 0 and π/2.
    n : int
        Sequence index.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    :class:`~stirlab.classic_limits.ClassicSequencePoint`
        Sequence term.

    Raises
    ------
    ValueError
        When `name` is not recognised.

    """
    consts = constants(ctx)
    w = ctx.working
    exact = base = None
    if name == 'stirling':
        value, target = stirling_ratio(n, ctx), consts.sqrt2pi
    elif name == 'demoivre':
        value, target = demoivre_cn(n, ctx), consts.inv_sqrt2pi
    elif name == 'middle-binomial':
        base = middle_binomial_prob(n)
        value = ctx.round(to_real(base, ctx) * w.sqrt(w.pi * n))
        target = ctx.mp.mpf(1)
    elif name == 'wallis':
        value, base, target = _wallis_point(n, ctx)
    elif name == 'middle-binomial-prob':
        exact = middle_binomial_prob(n)
        value, target = to_real(exact, ctx), ctx.mp.mpf(0)
    elif name == 'wallis-partial':
        exact = wallis_partial(n)
        value, target = to_real(exact, ctx), ctx.round(w.pi / 2)
    elif name == 'trapezoid':
        value = trapezoid_residual(n, ctx)
        target = ctx.round(w.log(w.sqrt(2 * w.pi)) - 1)
    else:
        raise ValueError(f"Unknown classic sequence: {name=}.")

    return ClassicSequencePoint(
        n=n, value=value, target=target, exact=exact, base=base
    )

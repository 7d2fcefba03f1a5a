"""
Irwin--Hall Moments (:mod:`~stirlab.irwin_hall`)
==========================================================================

Exact Irwin--Hall density and distribution function, the truncated
moments of the lower half and the scaled limits of their product form.

All alternating sums are evaluated in exact integer arithmetic: the
b_n sum is of order e^(−n) relative to its largest term, so any
fixed-precision evaluation loses every digit around n ≈ 40.

.. autosummary::
    MAX_EXACT_N
    IrwinHallDist
    BnTerm
    truncated_moment_sn
    truncated_moment_In
    truncated_moment_Jn
    standardize_moment
    standardized_truncated_moments
    quadrature_oracle_In_exact
    quadrature_oracle_In
    scaled_sn
    an_term
    bn_term

"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from sympy import QQ, Poly, Rational, Symbol

from .exact_arith import (
    _check_even,
    _check_pos_int,
    _log_factorial_working,
    binomial,
    to_real,
)


MAX_EXACT_N = 1024
"""Largest number of summands accepted by the command-line experiments.

"""


@dataclass(frozen=True)
class IrwinHallDist:
    """Distribution of the sum of `n` independent standard uniforms.

    Parameters
    ----------
    n : int
        Number of summed uniforms.
    xi : :class:`fractions.Fraction`, optional
        Mean per uniform (default is 1/2).
    sigma_sq : :class:`fractions.Fraction`, optional
        Variance per uniform (default is 1/12).

    Notes
    -----
    The density is a polynomial of degree n − 1 on each interval
    [j − 1, j], so both :meth:`density` and :meth:`cdf` are exact
    rationals at rational arguments.  Real arguments must be passed
    through :func:`~stirlab.exact_arith.rationalize` first.

    """

    n: int
    xi: Fraction = Fraction(1, 2)
    sigma_sq: Fraction = Fraction(1, 12)

    def __post_init__(self):
        _check_pos_int(self.n)

    def density(self, y):
        """Return the exact density f_n(y), zero outside [0, n].

        Parameters
        ----------
        y : :class:`fractions.Fraction` or int
            Evaluation point.

        Returns
        -------
        :class:`fractions.Fraction`
            f_n(y) = sum_{j ≤ y} (−1)^j C(n, j) (y − j)^(n−1) / (n−1)!.

        """
        y = _check_rational(y)
        n = self.n
        if y < 0 or y > n:
            return Fraction(0)
        if n == 1:
            return Fraction(1)

        total = sum(
            (-1)**j * binomial(n, j) * (y - j)**(n - 1)
            for j in range(math.floor(y) + 1)
        )
        return Fraction(total) / math.factorial(n - 1)

    def cdf(self, y):
        """Return the exact distribution function F_n(y), clamped to 0
        below the support and to 1 above it.

        Parameters
        ----------
        y : :class:`fractions.Fraction` or int
            Evaluation point.

        Returns
        -------
        :class:`fractions.Fraction`
            F_n(y) = sum_{j ≤ y} (−1)^j C(n, j) (y − j)^n / n!.

        """
        y = _check_rational(y)
        n = self.n
        if y <= 0:
            return Fraction(0)
        if y >= n:
            return Fraction(1)

        total = sum(
            (-1)**j * binomial(n, j) * (y - j)**n
            for j in range(math.floor(y) + 1)
        )
        return Fraction(total) / math.factorial(n)


def _check_rational(y):
    if isinstance(y, bool) or not isinstance(y, (int, Fraction)):
        raise TypeError(
            "Irwin--Hall evaluation points must be exact rationals; "
            f"use `stirlab.exact_arith.rationalize` first: {y=}."
        )
    return Fraction(y)


# ========================================================================
# Truncated moments
# ========================================================================

def _alternating_power_sum(n):
    """Exact sum_{j=0}^{n/2} (−1)^j C(n, j) (n − 2j)^(n+1).

    """
    return sum(
        (-1)**j * binomial(n, j) * (n - 2*j)**(n + 1)
        for j in range(n//2 + 1)
    )


def truncated_moment_sn(n):
    """Return s_n = ∫_0^(n/2) F_n(y) dy exactly.

    Parameters
    ----------
    n : int
        Even positive integer.

    Returns
    -------
    :class:`fractions.Fraction`
        s_n = sum_{j=0}^{n/2} (−1)^j C(n, j) (n/2 − j)^(n+1) / (n+1)!.

    Raises
    ------
    :class:`~stirlab.exact_arith.DomainError`
        When `n` is odd.

    """
    _check_even(n)
    return Fraction(
        _alternating_power_sum(n), 2**(n + 1) * math.factorial(n + 1)
    )


def truncated_moment_In(n):
    """Return the lower truncated moment I_n = ∫_0^(n/2) y f_n(y) dy
    = n/4 − s_n exactly.

    """
    return Fraction(n, 4) - truncated_moment_sn(n)


def truncated_moment_Jn(n):
    """Return the upper truncated moment J_n = n/2 − I_n exactly.

    """
    return Fraction(n, 2) - truncated_moment_In(n)


def standardize_moment(moment, n, ctx):
    """Return (moment − n/4)/(σ √n) for an exact half-range moment.

    """
    w = ctx.working
    centred = to_real(Fraction(moment) - Fraction(n, 4), ctx)
    return ctx.round(centred * w.sqrt(12) / w.sqrt(n))


def standardized_truncated_moments(n, ctx):
    """Return the standardised truncated moments
    ((I_n − n/4)/(σ √n), (J_n − n/4)/(σ √n)).

    Their limits are −1/√(2π) and +1/√(2π).

    """
    return (
        standardize_moment(truncated_moment_In(n), n, ctx),
        standardize_moment(truncated_moment_Jn(n), n, ctx),
    )


# ========================================================================
# Quadrature oracle
# ========================================================================

def quadrature_oracle_In_exact(n):
    """Return I_n by exact piecewise-polynomial antidifferentiation.

    On each knot interval [k, k+1] the density is a polynomial; y f_n(y)
    is integrated with :mod:`sympy` over the rationals and the pieces are
    summed, independently of the alternating-sum formula.

    Parameters
    ----------
    n : int
        Integer at least 2.

    Returns
    -------
    :class:`fractions.Fraction`
        ∫_0^(n/2) y f_n(y) dy.

    """
    _check_pos_int(n)
    if n < 2:
        raise ValueError(f"Quadrature oracle requires n ≥ 2: {n=}.")

    y = Symbol('y')
    identity = Poly(y, y, domain=QQ)
    piece = Poly(0, y, domain=QQ)
    upper = Fraction(n, 2)

    total = Rational(0)
    k = 0
    while k < upper:
        piece += (-1)**k * binomial(n, k) \
            * Poly([1, -k], y, domain=QQ)**(n - 1)
        antiderivative = (identity * piece).integrate()
        right = min(Fraction(k + 1), upper)
        right = Rational(right.numerator, right.denominator)
        total += antiderivative.eval(right) - antiderivative.eval(k)
        k += 1

    total = total / math.factorial(n - 1)
    return Fraction(int(total.p), int(total.q))


def quadrature_oracle_In(n, ctx):
    """Return the quadrature oracle for I_n as a real.

    See Also
    --------
    quadrature_oracle_In_exact

    """
    return to_real(quadrature_oracle_In_exact(n), ctx)


# ========================================================================
# Product form
# ========================================================================

class BnTerm(NamedTuple):
    """Factor b_n of the product form and its alternative display.

    Attributes
    ----------
    bn : mpf
        b_n, tending to σ = 1/√12.
    display : mpf
        e^n S / n, tending to 1/√3.

    """

    bn: object
    display: object


def scaled_sn(n, ctx):
    """Return s_n/√n, which tends to σ/√(2π) = 1/√(24π).

    """
    return ctx.round(
        ctx.working.mpf(to_real(truncated_moment_sn(n), ctx))
        / ctx.working.sqrt(n)
    )


def an_term(n, ctx):
    """Return a_n = ((n+1)/e^n) n^(n+1/2) / (n+1)!, evaluated in log
    space; it tends to 1/√(2π).

    """
    _check_pos_int(n)
    w = ctx.working
    return ctx.round(w.exp(
        (n + w.mpf(1)/2) * w.log(n) - n - _log_factorial_working(n, ctx)
    ))


def bn_term(n, ctx):
    """Return b_n = ½ (e^n/(n+1)) S together with e^n S / n.

    Parameters
    ----------
    n : int
        Even positive integer.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    :class:`~stirlab.irwin_hall.BnTerm`
        b_n and the alternative display.

    Notes
    -----
    S = sum_{j=0}^{n/2} (−1)^j C(n, j) (½)^n (1 − 2j/n)^(n+1) is formed
    exactly as an integer sum of (n − 2j)^(n+1) over the shared
    denominator 2^n n^(n+1); only the scaling by e^n is real.

    """
    _check_even(n)
    alternating = Fraction(_alternating_power_sum(n), 2**n * n**(n + 1))

    w = ctx.working
    scaled = w.mpf(to_real(alternating, ctx)) * w.exp(n)
    return BnTerm(
        bn=ctx.round(scaled / (2 * (n + 1))),
        display=ctx.round(scaled / n),
    )

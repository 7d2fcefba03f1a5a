"""
Exact and Arbitrary-Precision Arithmetic (:mod:`~stirlab.exact_arith`)
==========================================================================

Exact big-integer/rational combinatorics and configurable-precision real
arithmetic.

Every other module builds on the three number kinds defined here:

- exact rationals (:data:`BigRational`, i.e. :class:`fractions.Fraction`);
- reals bound to an explicit :class:`PrecisionContext` (:mod:`mpmath`
  floating-point values living in a per-context
  :class:`mpmath.MPContext`, so that no global precision state is ever
  touched);
- signed log-magnitudes (:class:`LogReal`) for quantities that overflow
  fixed-width floats.

.. autosummary::
    BigRational
    PrecisionContext
    LogReal
    Constants
    DomainError
    PrecisionError
    OutOfRangeError
    RationalisationWarning
    factorial
    binomial
    rising_product
    log_factorial
    constants
    to_real
    to_rational
    rationalize

"""
from __future__ import annotations

import math
import numbers
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import mpmath


BigRational = Fraction
"""Exact arbitrary-size rational, always stored in lowest terms.

"""

#: Minimum working precision in bits.
MIN_PRECISION_BITS = 64

#: Largest n whose log-factorial is taken from the exact integer n!.
EXACT_FACTORIAL_LIMIT = 10**6

#: Largest binary exponent a :class:`LogReal` may convert to a real.
REAL_EXPONENT_LIMIT = 2**31

# Natural-log bounds of the float64 range (overflow and smallest
# subnormal).
_FLOAT_LOG_MAX = 709.782712893384
_FLOAT_LOG_MIN = -745.1332191019411


class DomainError(ValueError):
    """Exception raised when an argument lies outside the domain of an
    operation.

    """


class PrecisionError(ValueError):
    """Exception raised when a precision setting is invalid.

    """


class OutOfRangeError(OverflowError):
    """Exception raised when a log-magnitude cannot be represented in the
    requested real format.

    """


class RationalisationWarning(UserWarning):
    """Warning issued when a real value is rationalised inexactly.

    """


# ========================================================================
# Validation
# ========================================================================

def _check_nonneg_int(n, name='n'):
    """Check an argument is a non-negative integer.

    Parameters
    ----------
    n : int
        Argument.
    name : str, optional
        Argument name used in the error message (default is 'n').

    Raises
    ------
    :class:`~stirlab.exact_arith.DomainError`
        When `n` is not a non-negative integer.

    """
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise DomainError(f"`{name}` must be an integer: {name}={n!r}.")
    if n < 0:
        raise DomainError(f"`{name}` must be non-negative: {name}={n}.")


def _check_pos_int(n, name='n'):
    _check_nonneg_int(n, name=name)
    if n < 1:
        raise DomainError(f"`{name}` must be positive: {name}={n}.")


def _check_even(n, name='n'):
    _check_pos_int(n, name=name)
    if n % 2:
        raise DomainError(f"`{name}` must be even: {name}={n}.")


# ========================================================================
# Precision
# ========================================================================

@dataclass(frozen=True)
class PrecisionContext:
    """Precision context binding reals to an explicit bit precision.

    Each context owns private :class:`mpmath.MPContext` instances, one at
    the target precision and one with extra guard bits for intermediate
    computations.  Some mpmath routines (e.g. `quad`) change the working
    precision while they run, so a worker thread must use its own
    :meth:`fork` rather than a shared context.

    Parameters
    ----------
    bits : int, optional
        Target precision in bits (default is 256).  Must be at least
        :data:`MIN_PRECISION_BITS`.
    guard : int, optional
        Extra working bits for intermediate results (default is 32).

    Raises
    ------
    :class:`~stirlab.exact_arith.PrecisionError`
        When `bits` or `guard` is invalid.

    Attributes
    ----------
    mp : :class:`mpmath.MPContext`
        Context at the target precision.
    working : :class:`mpmath.MPContext`
        Context at the guarded working precision.

    """

    bits: int = 256
    guard: int = 32

    def __post_init__(self):
        for name, value in [('bits', self.bits), ('guard', self.guard)]:
            if isinstance(value, bool) \
                    or not isinstance(value, numbers.Integral):
                raise PrecisionError(
                    f"Precision `{name}` must be an integer: {value!r}."
                )
        if self.bits < MIN_PRECISION_BITS:
            raise PrecisionError(
                f"Precision must be at least {MIN_PRECISION_BITS} bits: "
                f"bits={self.bits}."
            )
        if self.guard < 0:
            raise PrecisionError(
                f"Guard bits must be non-negative: guard={self.guard}."
            )

    @cached_property
    def mp(self):
        context = mpmath.MPContext()
        context.prec = self.bits
        return context

    @cached_property
    def working(self):
        context = mpmath.MPContext()
        context.prec = self.bits + self.guard
        return context

    @property
    def eps(self):
        """Unit roundoff 2^(1-bits) at the target precision.

        """
        return self.mp.ldexp(1, 1 - self.bits)

    def round(self, x):
        """Round a value (typically a working-precision intermediate) to
        the target precision.

        """
        return self.mp.mpf(x)

    def fork(self):
        """Return an equal context with fresh mpmath contexts.

        Returns
        -------
        :class:`~stirlab.exact_arith.PrecisionContext`
            Context with the same `bits` and `guard`.

        """
        return PrecisionContext(bits=self.bits, guard=self.guard)


def _is_real(x):
    return hasattr(x, '_mpf_')


def to_real(x, ctx):
    """Convert an exact or approximate value to a real at the context
    precision.

    Rationals are divided at working precision so that the result is
    rounded once more, giving a relative error ≤ 2^(1−bits).

    Parameters
    ----------
    x : int, :class:`fractions.Fraction`, float, str, mpf or |LogReal|
        Value to convert.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        Real value.

    .. |LogReal| replace:: :class:`~stirlab.exact_arith.LogReal`

    """
    if isinstance(x, LogReal):
        return x.to_real(ctx)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return ctx.mp.mpf(x.numerator)
        w = ctx.working
        return ctx.round(w.mpf(x.numerator) / w.mpf(x.denominator))
    return ctx.mp.mpf(x)


def to_rational(x):
    """Convert a value exactly to a rational.

    Parameters
    ----------
    x : int, :class:`fractions.Fraction`, float, str or mpf
        Value to convert.  Binary floating-point values are converted
        exactly.

    Returns
    -------
    :class:`fractions.Fraction`
        Exact rational value.

    Raises
    ------
    :class:`~stirlab.exact_arith.DomainError`
        When `x` is not finite.

    """
    if isinstance(x, Fraction):
        return x
    if _is_real(x):
        if not mpmath.isfinite(x):
            raise DomainError(f"Cannot rationalise a non-finite value: {x}.")
        man, exp = x.man_exp
        if man is None or man == 0:
            return Fraction(0)
        return Fraction(man) * Fraction(2)**exp
    try:
        return Fraction(x)
    except (ValueError, OverflowError) as err:
        raise DomainError(f"Cannot rationalise value: {x!r}.") from err


def rationalize(x, max_denominator=2**64):
    """Rationalise a value under a denominator bound.

    This is the documented route for callers holding real inputs to
    exact-rational operations (e.g. Irwin--Hall densities).

    Parameters
    ----------
    x : int, :class:`fractions.Fraction`, float, str or mpf
        Value to rationalise.
    max_denominator : int, optional
        Denominator bound (default is 2^64).

    Returns
    -------
    :class:`fractions.Fraction`
        Closest rational with denominator not exceeding the bound.

    Warns
    -----
    :class:`~stirlab.exact_arith.RationalisationWarning`
        When the bounded rational differs from the exact value of `x`.

    """
    exact = to_rational(x)
    bounded = exact.limit_denominator(max_denominator)
    if bounded != exact:
        warnings.warn(
            f"Value {x} has been rationalised inexactly to {bounded} "
            f"under the denominator bound {max_denominator}.",
            category=RationalisationWarning
        )
    return bounded


# ========================================================================
# Exact combinatorics
# ========================================================================

def factorial(n):
    """Return the exact factorial n!.

    Parameters
    ----------
    n : int
        Non-negative integer.

    Returns
    -------
    int
        Exact n!, with 0! = 1.

    """
    _check_nonneg_int(n)
    return math.factorial(n)


def binomial(n, j):
    """Return the exact binomial coefficient C(n, j).

    Parameters
    ----------
    n : int
        Non-negative integer.
    j : int
        Any integer.  Out-of-range values give zero.

    Returns
    -------
    int
        Exact C(n, j); zero for ``j < 0`` or ``j > n``.

    """
    _check_nonneg_int(n)
    if j < 0 or j > n:
        return 0
    return math.comb(n, j)


def rising_product(n, m):
    """Return the exact product (n+1)(n+2)...(n+m).

    Parameters
    ----------
    n : int
        Positive integer.
    m : int
        Non-negative number of factors.

    Returns
    -------
    int
        Exact product; 1 when `m` is zero.

    """
    _check_pos_int(n)
    _check_nonneg_int(m, name='m')
    return math.perm(n + m, m)


@lru_cache(maxsize=1024)
def _log_factorial_working(n, ctx):
    w = ctx.working
    if n <= EXACT_FACTORIAL_LIMIT:
        return w.log(math.factorial(n))
    return w.loggamma(n + 1)


def log_factorial(n, ctx):
    """Return ln(n!) at the context precision.

    Parameters
    ----------
    n : int
        Non-negative integer.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        ln(n!) with relative error ≤ 2^(8−bits).

    Notes
    -----
    For n ≤ :data:`EXACT_FACTORIAL_LIMIT` the logarithm is taken of the
    exact integer n!; above it, of the log-gamma function at n + 1.

    """
    _check_nonneg_int(n)
    return ctx.round(_log_factorial_working(n, ctx))


@dataclass(frozen=True)
class Constants:
    """Mathematical constants at a given precision.

    """

    e: object
    pi: object
    sqrt2pi: object
    inv_sqrt2pi: object


@lru_cache(maxsize=32)
def constants(ctx):
    """Return the constants e, π, √(2π) and 1/√(2π) at the context
    precision.

    Parameters
    ----------
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    :class:`~stirlab.exact_arith.Constants`
        Constants, each correct to within 2 ulps.

    """
    w = ctx.working
    sqrt2pi = w.sqrt(2 * w.pi)
    return Constants(
        e=ctx.round(+w.e),
        pi=ctx.round(+w.pi),
        sqrt2pi=ctx.round(sqrt2pi),
        inv_sqrt2pi=ctx.round(1 / sqrt2pi),
    )


# ========================================================================
# Log-space reals
# ========================================================================

@dataclass(frozen=True)
class LogReal:
    """Signed log-magnitude representation sign · exp(log_magnitude).

    Parameters
    ----------
    sign : {-1, 0, 1}
        Sign of the represented value.
    log_magnitude : mpf or int, optional
        Natural logarithm of the absolute value (default is 0).  Ignored
        when `sign` is zero.

    """

    sign: int
    log_magnitude: object = 0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(
                f"LogReal sign must be -1, 0 or 1: sign={self.sign}."
            )

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def from_log(cls, log_magnitude, sign=1):
        """Build from a log-magnitude.

        """
        return cls(sign, log_magnitude)

    @classmethod
    def from_real(cls, x, ctx):
        """Build from a real value.

        Parameters
        ----------
        x : mpf, int or float
            Real value.
        ctx : :class:`~stirlab.exact_arith.PrecisionContext`
            Precision context.

        Returns
        -------
        :class:`~stirlab.exact_arith.LogReal`
            Log-space value.

        """
        x = ctx.mp.mpf(x)
        if not x:
            return cls.zero()
        return cls(1 if x > 0 else -1, ctx.mp.log(abs(x)))

    @classmethod
    def from_rational(cls, q, ctx):
        """Build from an exact rational (or integer) without forming its
        real value, so arbitrarily large magnitudes are representable.

        """
        q = Fraction(q)
        if not q:
            return cls.zero()
        w = ctx.working
        log_magnitude = w.log(abs(q.numerator)) - w.log(q.denominator)
        return cls(1 if q > 0 else -1, ctx.round(log_magnitude))

    def __mul__(self, other):
        if not isinstance(other, LogReal):
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return LogReal.zero()
        return LogReal(
            self.sign * other.sign, self.log_magnitude + other.log_magnitude
        )

    def __truediv__(self, other):
        if not isinstance(other, LogReal):
            return NotImplemented
        if other.sign == 0:
            raise ZeroDivisionError("LogReal division by zero.")
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(
            self.sign * other.sign, self.log_magnitude - other.log_magnitude
        )

    def __neg__(self):
        return LogReal(-self.sign, self.log_magnitude)

    def add(self, other, ctx):
        """Add another log-space value (signed log-sum-exp).

        The smaller-magnitude operand is scaled relative to the larger, so
        the result has relative accuracy ≤ 2^(8−bits) except for
        cancellation inherent in the operands.

        Parameters
        ----------
        other : :class:`~stirlab.exact_arith.LogReal`
            Other operand.
        ctx : :class:`~stirlab.exact_arith.PrecisionContext`
            Precision context.

        Returns
        -------
        :class:`~stirlab.exact_arith.LogReal`
            Sum.

        """
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self

        if self.log_magnitude >= other.log_magnitude:
            large, small = self, other
        else:
            large, small = other, self

        w = ctx.working
        ratio = w.exp(
            w.mpf(small.log_magnitude) - w.mpf(large.log_magnitude)
        )
        if large.sign == small.sign:
            log_magnitude = large.log_magnitude + w.log1p(ratio)
        else:
            if ratio == 1:
                return LogReal.zero()
            log_magnitude = large.log_magnitude + w.log1p(-ratio)

        return LogReal(large.sign, ctx.round(log_magnitude))

    def sub(self, other, ctx):
        """Subtract another log-space value.

        See :meth:`~stirlab.exact_arith.LogReal.add`.

        """
        return self.add(-other, ctx)

    def to_real(self, ctx):
        """Convert to a real at the context precision.

        Parameters
        ----------
        ctx : :class:`~stirlab.exact_arith.PrecisionContext`
            Precision context.

        Returns
        -------
        mpf
            Real value.

        Raises
        ------
        :class:`~stirlab.exact_arith.OutOfRangeError`
            When the binary exponent exceeds
            :data:`REAL_EXPONENT_LIMIT`.

        """
        if self.sign == 0:
            return ctx.mp.mpf(0)

        w = ctx.working
        log_magnitude = w.mpf(self.log_magnitude)
        if abs(log_magnitude) > REAL_EXPONENT_LIMIT * w.ln2:
            raise OutOfRangeError(
                "LogReal magnitude is out of the representable range: "
                f"log_magnitude={w.nstr(log_magnitude, 15)}."
            )

        return ctx.round(self.sign * w.exp(log_magnitude))

    def to_float(self):
        """Convert to a double-precision float.

        Raises
        ------
        :class:`~stirlab.exact_arith.OutOfRangeError`
            When the magnitude overflows or underflows float64.

        """
        if self.sign == 0:
            return 0.
        log_magnitude = float(self.log_magnitude)
        if not _FLOAT_LOG_MIN < log_magnitude < _FLOAT_LOG_MAX:
            raise OutOfRangeError(
                "LogReal magnitude is out of the float range: "
                f"{log_magnitude=}."
            )
        return self.sign * math.exp(log_magnitude)

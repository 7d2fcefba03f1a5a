"""Test :mod:`~stirlab.exact_arith`.

"""
import math
from fractions import Fraction

import mpmath
import pytest

from stirlab.exact_arith import (
    DomainError,
    LogReal,
    OutOfRangeError,
    PrecisionContext,
    PrecisionError,
    RationalisationWarning,
    binomial,
    constants,
    factorial,
    log_factorial,
    rationalize,
    rising_product,
    to_rational,
    to_real,
)


@pytest.mark.parametrize(
    "bits, guard, exception",
    [
        # Test case 1: below the minimum precision
        (63, 32, PrecisionError),
        # Test case 2: negative guard bits
        (64, -1, PrecisionError),
        # Test case 3: non-integer precision
        (128.5, 32, PrecisionError),
        # Test case 4: boolean precision
        (True, 32, PrecisionError),
    ],
)
def test_PrecisionContext_invalid(bits, guard, exception):
    with pytest.raises(exception):
        PrecisionContext(bits=bits, guard=guard)


def test_PrecisionContext_isolation():
    ctx_64, ctx_512 = PrecisionContext(bits=64), PrecisionContext(bits=512)
    global_prec = mpmath.mp.prec

    assert ctx_64.mp.prec == 64
    assert ctx_512.working.prec == 512 + 32
    assert mpmath.mp.prec == global_prec, \
        "Precision contexts must not touch the global mpmath precision."

    third_64 = to_real(Fraction(1, 3), ctx_64)
    third_512 = to_real(Fraction(1, 3), ctx_512)
    assert abs(3 * third_64 - 1) <= ctx_64.eps
    assert abs(3 * third_512 - 1) <= ctx_512.eps


def test_PrecisionContext_fork(ctx):
    forked = ctx.fork()
    assert forked == ctx and hash(forked) == hash(ctx)
    assert forked.working is not ctx.working
    assert forked.mp is not ctx.mp

    forked.working.prec += 100
    assert ctx.working.prec == ctx.bits + ctx.guard


@pytest.mark.parametrize(
    "n, expected",
    [
        (0, 1),
        (1, 1),
        (5, 120),
        (20, 2432902008176640000),
    ],
)
def test_factorial(n, expected):
    assert factorial(n) == expected


@pytest.mark.parametrize("n", [-1, 2.5, True])
def test_factorial_invalid(n):
    with pytest.raises(DomainError):
        factorial(n)


@pytest.mark.parametrize(
    "n, j, expected",
    [
        # Test case 1: in range
        (10, 3, 120),
        # Test case 2: middle coefficient
        (4, 2, 6),
        # Test case 3: negative index
        (5, -1, 0),
        # Test case 4: index above n
        (5, 6, 0),
        # Test case 5: trivial
        (0, 0, 1),
    ],
)
def test_binomial(n, j, expected):
    assert binomial(n, j) == expected


def test_binomial_symmetry():
    for n in range(0, 30):
        for j in range(0, n + 1):
            assert binomial(n, j) == binomial(n, n - j)


def test_binomial_pascal():
    for n in range(1, 201):
        for j in range(0, n + 1):
            assert binomial(n, j) == binomial(n - 1, j - 1) \
                + binomial(n - 1, j)


def test_binomial_absorption():
    for n in range(1, 201):
        for j in range(1, n + 1):
            assert j * binomial(n, j) == n * binomial(n - 1, j - 1)


@pytest.mark.parametrize(
    "n, m, expected",
    [
        (3, 0, 1),
        (3, 2, 20),
        (1, 4, 120),
    ],
)
def test_rising_product(n, m, expected):
    assert rising_product(n, m) == expected


def test_log_factorial(ctx):
    for n in [0, 1, 10, 100, 1000]:
        expected = ctx.mp.log(math.factorial(n)) if n > 1 else 0
        assert abs(log_factorial(n, ctx) - expected) \
            <= ctx.mp.ldexp(1, 8 - ctx.bits) * max(1, abs(expected))


@pytest.mark.parametrize("n", [10, 1000, 10**5])
def test_log_factorial_precision_doubling(n):
    # Values at doubled precision agree with the lower one to its accuracy.
    ctx_128, ctx_256 = PrecisionContext(bits=128), PrecisionContext(bits=256)
    low, high = log_factorial(n, ctx_128), log_factorial(n, ctx_256)
    assert abs(ctx_256.mp.mpf(low) - high) \
        <= ctx_256.mp.ldexp(abs(high), 4 - 128)


def test_log_factorial_large(ctx_low):
    # Above the exact limit the log-gamma route takes over.
    n = 2 * 10**6
    value = log_factorial(n, ctx_low)
    reference = mpmath.loggamma(n + 1)
    assert abs(float(value) - float(reference)) / float(reference) < 1.e-15


def test_constants(ctx):
    consts = constants(ctx)
    assert abs(consts.sqrt2pi * consts.inv_sqrt2pi - 1) \
        <= 4 * ctx.eps
    assert abs(consts.sqrt2pi**2 - 2 * consts.pi) <= 16 * ctx.eps
    assert abs(float(consts.e) - math.e) < 1.e-15


@pytest.mark.parametrize(
    "x, expected",
    [
        # Test case 1: exact rational
        (Fraction(7, 3), Fraction(7, 3)),
        # Test case 2: binary float converted exactly
        (0.5, Fraction(1, 2)),
        # Test case 3: decimal string
        ('0.25', Fraction(1, 4)),
        # Test case 4: integer
        (3, Fraction(3)),
    ],
)
def test_to_rational(x, expected):
    assert to_rational(x) == expected


def test_to_rational_real(ctx):
    assert to_rational(ctx.mp.mpf('0.375')) == Fraction(3, 8)
    assert to_rational(ctx.mp.mpf(0)) == 0
    with pytest.raises(DomainError):
        to_rational(ctx.mp.inf)


def test_rationalize():
    assert rationalize(Fraction(1, 3)) == Fraction(1, 3)

    with pytest.warns(RationalisationWarning):
        bounded = rationalize(0.1, max_denominator=100)
    assert bounded == Fraction(1, 10)


def test_LogReal_arithmetic(ctx):
    def exact(q):
        return to_real(Fraction(q), ctx)

    a = LogReal.from_rational(Fraction(3, 4), ctx)
    b = LogReal.from_real(-2, ctx)

    assert abs((a * b).to_real(ctx) - exact('-3/2')) <= 8 * ctx.eps
    assert abs((a / b).to_real(ctx) - exact('-3/8')) <= 8 * ctx.eps
    assert abs(a.add(b, ctx).to_real(ctx) - exact('-5/4')) <= 8 * ctx.eps
    assert abs(a.sub(b, ctx).to_real(ctx) - exact('11/4')) <= 8 * ctx.eps
    assert a.sub(a, ctx).sign == 0

    zero = LogReal.zero()
    assert (zero * a).sign == 0
    assert a.add(zero, ctx) == a
    with pytest.raises(ZeroDivisionError):
        a / zero


def test_LogReal_range(ctx):
    # n^n e^(-n) / n! at n = 10^4 is representable only in log space.
    n = 10**4
    w = ctx.working
    huge = LogReal.from_log(n * w.log(n) - n)
    scaled = huge / LogReal.from_rational(Fraction(factorial(n)), ctx)
    assert abs(scaled.to_float() - 1 / math.sqrt(2 * math.pi * n)) \
        < 1.e-5 / math.sqrt(n)

    with pytest.raises(OutOfRangeError):
        huge.to_float()
    with pytest.raises(OutOfRangeError):
        LogReal.from_log(ctx.mp.mpf(2)**40).to_real(ctx)
    with pytest.raises(DomainError):
        LogReal(2, 0)

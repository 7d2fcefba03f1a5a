"""
Laplace Approximation and BIC (:mod:`~stirlab.laplace_bic`)
==========================================================================

Laplace approximation to integrals of exp(g), a reference adaptive
quadrature, and the four flat-prior BIC case studies whose left-hand
sides are known exactly.

.. autosummary::
    LaplaceProblem
    QuadratureConfig
    Mode
    BicResult
    PoissonSingle
    PoissonSample
    Exponential
    Binomial
    NoConvergenceError
    NegativeCurvatureError
    MaxDepthExceededError
    find_mode
    laplace_approx
    laplace_approx_log
    integrate_exp
    gamma_problem
    gaussian_problem
    bic_case
    bic_integral_check
    make_bic_case

"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .exact_arith import (
    DomainError,
    LogReal,
    _check_pos_int,
    _log_factorial_working,
    factorial,
    to_rational,
    to_real,
)


#: Maximum number of Newton iterations in mode finding.
MAX_NEWTON_ITERATIONS = 200

_MAX_STEP_HALVINGS = 200
_MAX_BRACKET_DOUBLINGS = 2000
_BISECTION_STEPS = 64

QUADRATURE_RULES = ('gauss-legendre', 'simpson')

BINOMIAL_BIC_FLAG = (
    "binomial-bic: the observed-information factor is read as "
    "{(x/n)((n-x)/n)}^(1/2); the ratio tends to 1 like 1 - 3/(4n)"
)


class NoConvergenceError(RuntimeError):
    """Exception raised when an iteration fails to converge.

    """


class NegativeCurvatureError(ValueError):
    """Exception raised when the log-integrand is not strictly concave at
    its mode.

    """


class MaxDepthExceededError(RuntimeError):
    """Exception raised when adaptive quadrature exceeds its recursion
    depth.

    """


# ========================================================================
# Problems
# ========================================================================

@dataclass(frozen=True)
class LaplaceProblem:
    """Unimodal log-integrand g on an interval.

    Parameters
    ----------
    log_integrand : callable
        g, taking and returning reals at the working precision.
    initial_guess : mpf, float or int
        Starting point of the mode search, inside `domain`.
    first_deriv, second_deriv : callable, optional
        g′ and g″.  Central finite differences with step 2^(−bits/3) are
        used when absent.
    domain : tuple, optional
        Open interval (lower, upper), endpoints possibly infinite
        (default is the real line).

    """

    log_integrand: Callable
    initial_guess: object = 0
    first_deriv: Optional[Callable] = None
    second_deriv: Optional[Callable] = None
    domain: tuple = (-math.inf, math.inf)

    def contains(self, x):
        lower, upper = self.domain
        return lower < x < upper


@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive quadrature configuration.

    Parameters
    ----------
    rel_tolerance : float or mpf, optional
        Relative tolerance (default is `None`, meaning 2^(−bits/2) at
        the context precision).
    max_depth : int, optional
        Maximum bisection depth of any panel (default is 60).
    tail_cut : float, optional
        Level Λ: only the region where g ≥ g_max − Λ is integrated
        (default is 60, at least 30).
    rule : {'gauss-legendre', 'simpson'}, optional
        Panel rule (default is 'gauss-legendre').  The Simpson rule with
        Richardson correction suits moderate tolerances only.

    Raises
    ------
    ValueError
        When any parameter is out of range.

    """

    rel_tolerance: Optional[object] = None
    max_depth: int = 60
    tail_cut: float = 60
    rule: str = 'gauss-legendre'

    def __post_init__(self):
        if self.rel_tolerance is not None and not self.rel_tolerance > 0:
            raise ValueError(
                "Relative tolerance must be positive: "
                f"rel_tolerance={self.rel_tolerance}."
            )
        if self.max_depth < 1:
            raise ValueError(
                f"Maximum depth must be positive: max_depth={self.max_depth}."
            )
        if self.tail_cut < 30:
            raise ValueError(
                f"Tail cut must be at least 30: tail_cut={self.tail_cut}."
            )
        if self.rule not in QUADRATURE_RULES:
            raise ValueError(f"Unknown quadrature rule: rule={self.rule!r}.")

    def tolerance(self, ctx):
        if self.rel_tolerance is None:
            return ctx.working.ldexp(1, -(ctx.bits // 2))
        return ctx.working.mpf(self.rel_tolerance)


@dataclass(frozen=True)
class Mode:
    """Mode of a log-integrand.

    Attributes
    ----------
    x0 : mpf
        Position of the maximum.
    g_max : mpf
        Maximum value g(x0).
    c : mpf
        Curvature −g″(x0) > 0.

    """

    x0: object
    g_max: object
    c: object


def gamma_problem(n, ctx):
    """Return the problem g(x) = n ln x − x on (0, ∞), whose integral of
    exp(g) is n!.

    """
    _check_pos_int(n)
    w = ctx.working
    return LaplaceProblem(
        log_integrand=lambda x: n * w.log(x) - x,
        first_deriv=lambda x: n / x - 1,
        second_deriv=lambda x: -n / x**2,
        domain=(0, math.inf),
        initial_guess=1,
    )


def gaussian_problem(ctx, centre=0, curvature=1):
    """Return the problem g(x) = −curvature (x − centre)²/2 on the real
    line.

    """
    w = ctx.working
    centre, curvature = w.mpf(centre), w.mpf(curvature)
    return LaplaceProblem(
        log_integrand=lambda x: -curvature * (x - centre)**2 / 2,
        first_deriv=lambda x: -curvature * (x - centre),
        second_deriv=lambda x: -curvature,
        initial_guess=centre + 1,
    )


# ========================================================================
# Mode finding
# ========================================================================

def _derivatives(problem, ctx):
    w = ctx.working
    g = problem.log_integrand
    if problem.first_deriv is not None and problem.second_deriv is not None:
        return problem.first_deriv, problem.second_deriv

    step = w.ldexp(1, -(ctx.bits // 3))

    def first(x):
        h = step * max(1, abs(x))
        return (g(x + h) - g(x - h)) / (2*h)

    def second(x):
        h = step * max(1, abs(x))
        return (g(x + h) - 2*g(x) + g(x - h)) / h**2

    return (problem.first_deriv or first), (problem.second_deriv or second)


def _is_finite(w, value):
    return bool(w.isfinite(value))


def find_mode(problem, ctx, logger=None):
    """Find the mode of a log-integrand by damped Newton iteration.

    The Newton step on g′ is halved until g does not decrease beyond
    rounding; where g is not concave an ascent step of size max(1, |x|)
    is taken instead.

    Parameters
    ----------
    problem : :class:`~stirlab.laplace_bic.LaplaceProblem`
        Problem.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.
    logger : :class:`logging.Logger`, optional
        Logger (default is `None`).

    Returns
    -------
    :class:`~stirlab.laplace_bic.Mode`
        Mode position, maximum and curvature.

    Raises
    ------
    :class:`~stirlab.laplace_bic.NoConvergenceError`
        When |g′(x)| ≤ 2^(−bits/2) max(1, |x|) is not reached in
        :data:`MAX_NEWTON_ITERATIONS` iterations.
    :class:`~stirlab.laplace_bic.NegativeCurvatureError`
        When −g″(x0) ≤ 0.

    """
    w = ctx.working
    g = problem.log_integrand
    first, second = _derivatives(problem, ctx)
    tolerance = w.ldexp(1, -(ctx.bits // 2))
    slack = w.ldexp(1, 8 - ctx.bits)

    x = w.mpf(problem.initial_guess)
    if not problem.contains(x):
        raise DomainError(
            f"Initial guess lies outside the domain: {x=}, "
            f"domain={problem.domain}."
        )
    gx = g(x)

    for iteration in range(MAX_NEWTON_ITERATIONS):
        gradient = first(x)
        if abs(gradient) <= tolerance * max(1, abs(x)):
            break

        curvature = second(x)
        if curvature < 0:
            step = -gradient / curvature
        else:
            step = w.sign(gradient) * max(1, abs(x))

        for _ in range(_MAX_STEP_HALVINGS):
            x_new = x + step
            if problem.contains(x_new):
                g_new = g(x_new)
                if _is_finite(w, g_new) \
                        and g_new >= gx - slack * max(1, abs(gx)):
                    break
            step /= 2
        else:
            raise NoConvergenceError(
                f"Mode search cannot make progress from {x=}."
            )
        x, gx = x_new, g_new
    else:
        raise NoConvergenceError(
            f"Mode search did not converge in {MAX_NEWTON_ITERATIONS} "
            f"iterations: {x=}."
        )

    # Polish.
    curvature = second(x)
    if curvature < 0:
        x_new = x - first(x) / curvature
        if problem.contains(x_new):
            g_new = g(x_new)
            if _is_finite(w, g_new) and g_new >= gx - slack * max(1, abs(gx)):
                x, gx = x_new, g_new
                curvature = second(x)

    if not -curvature > 0:
        raise NegativeCurvatureError(
            f"Log-integrand is not strictly concave at its mode: {x=}, "
            f"g''={curvature}."
        )

    if logger:
        logger.debug("Mode found after %d iterations: x0=%s.", iteration, x)

    return Mode(x0=ctx.round(x), g_max=ctx.round(gx), c=ctx.round(-curvature))


def laplace_approx_log(problem, ctx):
    """Return the Laplace approximation exp(g_max) √(2π/c) in log space.

    """
    mode = find_mode(problem, ctx)
    w = ctx.working
    return LogReal.from_log(
        ctx.round(mode.g_max + w.log(2 * w.pi / mode.c) / 2)
    )


def laplace_approx(problem, ctx):
    """Return the Laplace approximation exp(g_max) √(2π/c).

    Parameters
    ----------
    problem : :class:`~stirlab.laplace_bic.LaplaceProblem`
        Problem.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    mpf
        Approximation, formed in log space.

    """
    return laplace_approx_log(problem, ctx).to_real(ctx)


# ========================================================================
# Quadrature
# ========================================================================

def _cut_point(g, mode, level, scale, bound, direction, w):
    """Return a point beyond which g < g_max − level, or the domain
    bound if it is reached first.

    """
    floor_ = mode.g_max - level

    def above(x):
        value = g(x)
        return _is_finite(w, value) and value >= floor_

    inner, distance = w.mpf(mode.x0), w.mpf(scale)
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        outer = mode.x0 + direction * distance
        if direction * (outer - bound) >= 0:
            return w.mpf(bound)
        if not above(outer):
            break
        inner, distance = outer, 2 * distance
    else:
        raise NoConvergenceError(
            "Log-integrand does not decay away from the mode."
        )

    for _ in range(_BISECTION_STEPS):
        middle = (inner + outer) / 2
        if above(middle):
            inner = middle
        else:
            outer = middle

    return outer


def _adapt_gauss_legendre(f, a, b, tolerance, depth, config, w):
    value, error = w.quad(f, [a, b], method='gauss-legendre', error=True)
    if error <= tolerance:
        return value, 1
    if depth >= config.max_depth:
        raise MaxDepthExceededError(
            f"Quadrature exceeded the maximum depth on [{a}, {b}]: "
            f"max_depth={config.max_depth}."
        )
    middle = (a + b) / 2
    left, nleft = _adapt_gauss_legendre(
        f, a, middle, tolerance / 2, depth + 1, config, w
    )
    right, nright = _adapt_gauss_legendre(
        f, middle, b, tolerance / 2, depth + 1, config, w
    )
    return left + right, nleft + nright


def _simpson(f, a, fa, b, fb):
    middle = (a + b) / 2
    fm = f(middle)
    return middle, fm, (b - a) / 6 * (fa + 4*fm + fb)


def _adapt_simpson(f, a, fa, b, fb, middle, fm, whole, tolerance, depth,
                   config):
    lm, flm, left = _simpson(f, a, fa, middle, fm)
    rm, frm, right = _simpson(f, middle, fm, b, fb)
    delta = left + right - whole
    if abs(delta) <= 15 * tolerance:
        return left + right + delta / 15, 1
    if depth >= config.max_depth:
        raise MaxDepthExceededError(
            f"Quadrature exceeded the maximum depth on [{a}, {b}]: "
            f"max_depth={config.max_depth}."
        )
    left, nleft = _adapt_simpson(
        f, a, fa, middle, fm, lm, flm, left, tolerance / 2, depth + 1,
        config
    )
    right, nright = _adapt_simpson(
        f, middle, fm, b, fb, rm, frm, right, tolerance / 2, depth + 1,
        config
    )
    return left + right, nleft + nright


def _integrate_panel(f, a, b, tolerance, config, w):
    if config.rule == 'gauss-legendre':
        return _adapt_gauss_legendre(f, a, b, tolerance, 0, config, w)
    fa, fb = f(a), f(b)
    middle, fm, whole = _simpson(f, a, fa, b, fb)
    return _adapt_simpson(
        f, a, fa, b, fb, middle, fm, whole, tolerance, 0, config
    )


def integrate_exp(problem, ctx, config=None, logger=None):
    """Integrate exp(g) by adaptive quadrature over the region where
    g ≥ g_max − Λ.

    Parameters
    ----------
    problem : :class:`~stirlab.laplace_bic.LaplaceProblem`
        Problem with a unimodal log-integrand.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.
    config : :class:`~stirlab.laplace_bic.QuadratureConfig`, optional
        Quadrature configuration (default is `None`, meaning defaults).
    logger : :class:`logging.Logger`, optional
        Logger (default is `None`).

    Returns
    -------
    mpf
        Integral, within rel_tolerance (1 + e^(2−Λ)) of the true value
        for unimodal g.

    Raises
    ------
    :class:`~stirlab.laplace_bic.MaxDepthExceededError`
        When a panel needs more than `max_depth` bisections.

    Notes
    -----
    The cut points are bracketed by doubling from the mode in steps of
    1/√c and refined by bisection.  The integrand is rescaled to
    exp(g − g_max), whose integral is of the order √(2π/c).

    """
    config = config or QuadratureConfig()
    w = ctx.working
    g = problem.log_integrand
    mode = find_mode(problem, ctx, logger=logger)

    scale = 1 / w.sqrt(mode.c)
    lower, upper = problem.domain
    left = _cut_point(g, mode, config.tail_cut, scale, lower, -1, w)
    right = _cut_point(g, mode, config.tail_cut, scale, upper, +1, w)

    g_max = w.mpf(mode.g_max)

    def scaled(x):
        value = g(x)
        if w.isnan(value):
            return w.zero
        return w.exp(value - g_max)

    tolerance = config.tolerance(ctx) * w.sqrt(2 * w.pi) * scale
    total, panels = w.zero, 0
    for a, b in [(left, w.mpf(mode.x0)), (w.mpf(mode.x0), right)]:
        value, count = _integrate_panel(scaled, a, b, tolerance / 2, config, w)
        total += value
        panels += count

    if logger:
        logger.debug(
            "Quadrature used %d panels on [%s, %s].",
            panels, ctx.mp.nstr(left, 8), ctx.mp.nstr(right, 8)
        )

    return ctx.round(w.exp(g_max) * total)


# ========================================================================
# BIC case studies
# ========================================================================

@dataclass(frozen=True)
class BicResult:
    """Both sides of a BIC approximation and their ratio.

    """

    exact_side: object
    bic_side: object
    ratio: object


def _check_count(value, name, lower=1):
    if isinstance(value, bool) or not isinstance(value, int) \
            or value < lower:
        raise DomainError(f"`{name}` must be an integer ≥ {lower}: {value}.")


@dataclass(frozen=True)
class PoissonSingle:
    """Single Poisson observation x; the exact side is 1.

    """

    x: int

    def validate(self):
        _check_count(self.x, 'x')

    def exact_side(self):
        return Fraction(1)

    def log_bic_side(self, ctx):
        w = ctx.working
        x = self.x
        return -x + x * w.log(x) - _log_factorial_working(x, ctx) \
            + w.log(2 * w.pi * x) / 2

    def likelihood_problem(self, ctx):
        w = ctx.working
        x = self.x
        log_x_factorial = _log_factorial_working(x, ctx)
        return LaplaceProblem(
            log_integrand=lambda t: -t + x * w.log(t) - log_x_factorial,
            first_deriv=lambda t: x / t - 1,
            second_deriv=lambda t: -x / t**2,
            domain=(0, math.inf),
            initial_guess=1,
        )


@dataclass(frozen=True)
class PoissonSample:
    """Poisson sample of size n with total z; the exact side is
    z!/n^(z+1).

    """

    n: int
    z: int

    def validate(self):
        _check_count(self.n, 'n')
        _check_count(self.z, 'z')

    def exact_side(self):
        return Fraction(factorial(self.z), self.n**(self.z + 1))

    def log_bic_side(self, ctx):
        w = ctx.working
        n, z = self.n, self.z
        return -z + z * w.log(w.mpf(z) / n) + w.log(2 * w.pi * z) / 2 \
            - w.log(n)

    def likelihood_problem(self, ctx):
        w = ctx.working
        n, z = self.n, self.z
        return LaplaceProblem(
            log_integrand=lambda t: -n * t + z * w.log(t),
            first_deriv=lambda t: z / t - n,
            second_deriv=lambda t: -z / t**2,
            domain=(0, math.inf),
            initial_guess=1,
        )


@dataclass(frozen=True)
class Exponential:
    """Exponential sample of size n with total z > 0; the exact side is
    n!/z^(n+1).

    """

    n: int
    z: Union[int, Fraction]

    def validate(self):
        _check_count(self.n, 'n')
        if not to_rational(self.z) > 0:
            raise DomainError(f"`z` must be positive: z={self.z}.")

    def exact_side(self):
        return Fraction(factorial(self.n)) / to_rational(self.z)**(self.n + 1)

    def log_bic_side(self, ctx):
        w = ctx.working
        n = self.n
        z = w.mpf(to_real(to_rational(self.z), ctx))
        return n * w.log(n / z) - n + w.log(2 * w.pi * n) / 2 - w.log(z)

    def likelihood_problem(self, ctx):
        w = ctx.working
        n = self.n
        z = w.mpf(to_real(to_rational(self.z), ctx))
        return LaplaceProblem(
            log_integrand=lambda t: n * w.log(t) - z * t,
            first_deriv=lambda t: n / t - z,
            second_deriv=lambda t: -n / t**2,
            domain=(0, math.inf),
            initial_guess=1,
        )


@dataclass(frozen=True)
class Binomial:
    """Binomial count x out of n; the exact side is x!(n−x)!/(n+1)!.

    See Also
    --------
    :data:`~stirlab.laplace_bic.BINOMIAL_BIC_FLAG`

    """

    n: int
    x: int

    def validate(self):
        _check_count(self.n, 'n', lower=2)
        _check_count(self.x, 'x')
        if self.x > self.n - 1:
            raise DomainError(
                f"`x` must lie in [1, n-1]: x={self.x}, n={self.n}."
            )

    def exact_side(self):
        n, x = self.n, self.x
        return Fraction(factorial(x) * factorial(n - x), factorial(n + 1))

    def log_bic_side(self, ctx):
        w = ctx.working
        n, x = self.n, self.x
        p, q = w.mpf(x) / n, w.mpf(n - x) / n
        return x * w.log(p) + (n - x) * w.log(q) \
            + w.log(2 * w.pi) / 2 + w.log(p * q) / 2 - w.log(n) / 2

    def likelihood_problem(self, ctx):
        w = ctx.working
        n, x = self.n, self.x
        return LaplaceProblem(
            log_integrand=lambda p: x * w.log(p) + (n - x) * w.log(1 - p),
            first_deriv=lambda p: x / p - (n - x) / (1 - p),
            second_deriv=lambda p: -x / p**2 - (n - x) / (1 - p)**2,
            domain=(0, 1),
            initial_guess=w.mpf(1) / 2,
        )


BIC_KINDS = {
    'poisson-single': lambda size: PoissonSingle(x=size),
    'poisson-sample': lambda size: PoissonSample(n=size, z=size),
    'exponential': lambda size: Exponential(n=size, z=size),
    'binomial': lambda size: Binomial(n=size, x=size // 2),
}


def make_bic_case(kind, size):
    """Build a BIC case with proportional data: x = size for a single
    Poisson observation, z = n for the samples and x = n/2 for the
    binomial.

    Parameters
    ----------
    kind : {'poisson-single', 'poisson-sample', 'exponential', \
'binomial'}
        Case kind.
    size : int
        Size parameter.

    Returns
    -------
    :class:`~stirlab.laplace_bic.PoissonSingle`, \
:class:`~stirlab.laplace_bic.PoissonSample`, \
:class:`~stirlab.laplace_bic.Exponential` or \
:class:`~stirlab.laplace_bic.Binomial`
        Case.

    """
    try:
        case = BIC_KINDS[kind](size)
    except KeyError:
        raise ValueError(f"Unknown BIC case kind: {kind=}.") from None
    case.validate()
    return case


def bic_case(case, ctx):
    """Evaluate both sides of the BIC approximation
    ∫ L_n(θ) dθ ≐ L_(n,max) (2π/J_n)^(1/2).

    Parameters
    ----------
    case : :class:`~stirlab.laplace_bic.PoissonSingle`, \
:class:`~stirlab.laplace_bic.PoissonSample`, \
:class:`~stirlab.laplace_bic.Exponential` or \
:class:`~stirlab.laplace_bic.Binomial`
        Case.
    ctx : :class:`~stirlab.exact_arith.PrecisionContext`
        Precision context.

    Returns
    -------
    :class:`~stirlab.laplace_bic.BicResult`
        Exact side (from exact rationals), BIC side (from log space) and
        their ratio.

    """
    case.validate()
    w = ctx.working
    exact = case.exact_side()
    log_exact = w.log(exact.numerator) - w.log(exact.denominator)
    log_bic = case.log_bic_side(ctx)
    return BicResult(
        exact_side=to_real(exact, ctx),
        bic_side=ctx.round(w.exp(log_bic)),
        ratio=ctx.round(w.exp(log_exact - log_bic)),
    )


def bic_integral_check(case, ctx, config=None):
    """Integrate the case likelihood over its parameter by quadrature,
    which reproduces the exact side.

    """
    case.validate()
    return integrate_exp(case.likelihood_problem(ctx), ctx, config=config)

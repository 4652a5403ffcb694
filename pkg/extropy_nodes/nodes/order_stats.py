"""
Order Statistics
================
Past extropy of the extremes of an i.i.d. sample of size n: the maximum
X_{n:n} (lifetime of a parallel system) and the minimum X_{1:n} (series
system), plus the pieces used to show that J(_tX_{n:n}) decreases in n when
f increases on [0, T] with T > t:

  - the density of (X_{n:n} | X_{n:n} <= t),
  - the representation
        J(_tX_{n:n}) = -n^2 / (2 (2n - 1) F(t)) * E[f(X_{2n-1:2n-1}) | X_{2n-1:2n-1} <= t],
  - the likelihood-ratio ordering of those conditional maxima.

Powers F^(2n-2) / F^(2n) are taken as exponentials of log differences so
that large n and small t do not underflow.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError
from .grids import Axis, ScanGrid, map_ordered
from .measures import _quadrature_value
from .quadrature import integrate
from .settings import MONOTONICITY_TOL, ORDER_STAT_TOL, resolve

log = logging.getLogger("extropy-nodes")


class Extreme(str, Enum):
    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class OrderStatSpec:
    n: int
    which: Extreme = Extreme.MAX

    def __post_init__(self):
        _check_n(self.n)


@dataclass(frozen=True)
class MaxSequenceResult:
    holds: bool
    first_violation: int = None
    values: list = field(default_factory=list)
    # f increasing on [lower, T] with T > t
    hypothesis_holds: bool = False


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"sample size must be an integer >= 1, got {n}")
    return int(n)


def _log_past_mass(dist, t):
    log_F_t = dist.log_cdf(t)
    if not math.isfinite(log_F_t):
        raise DomainError(f"{dist.label}: F({t}) = 0, the past at t is empty")
    return log_F_t


def _weighted_power(log_values, exponent, shift=0.0):
    """exp(exponent * log_values - shift) with 0 * (-inf) read as 0."""
    log_values = np.asarray(log_values, dtype=float)
    if exponent == 0:
        return np.full_like(log_values, math.exp(-shift))
    with np.errstate(invalid="ignore"):
        return np.exp(exponent * log_values - shift)


def _integral(dist, integrand, a, b, ctx):
    return integrate(integrand, a, b, ctx.quadrature, breakpoints=dist.breakpoints(a, b))


def past_extropy_max(dist, n, t, ctx=None):
    """J(_tX_{n:n}) = -n^2 / (2 F(t)^(2n)) * integral over (0, t) of f^2 F^(2n-2)."""
    ctx = resolve(ctx)
    n = _check_n(n)
    log_F_t = _log_past_mass(dist, t)
    dist.require_square_integrable(n=n)

    def integrand(x):
        return np.square(dist.pdf(x)) * _weighted_power(dist.log_cdf(x), 2 * n - 2, 2 * n * log_F_t)

    upper = min(float(t), dist.support.upper)
    result = _integral(dist, integrand, dist.support.lower, upper, ctx)
    return _quadrature_value(-0.5 * n**2, result)


def past_extropy_min(dist, n, t, ctx=None):
    """Past extropy of X_{1:n}, whose law is F_{1:n} = 1 - (1 - F)^n."""
    ctx = resolve(ctx)
    n = _check_n(n)
    _log_past_mass(dist, t)
    dist.require_square_integrable()
    F_min = -math.expm1(n * dist.log_survival(t))

    def integrand(x):
        return n**2 * np.square(dist.pdf(x)) * _weighted_power(dist.log_survival(x), 2 * n - 2)

    upper = min(float(t), dist.support.upper)
    result = _integral(dist, integrand, dist.support.lower, upper, ctx)
    return _quadrature_value(-0.5 / F_min**2, result)


def conditional_max_density(dist, n, t, x):
    """Density of (X_{n:n} | X_{n:n} <= t): n f(x) F^(n-1)(x) / F^n(t) on (0, t]."""
    n = _check_n(n)
    log_F_t = _log_past_mass(dist, t)
    x = np.asarray(x, dtype=float)
    inside = (x > 0.0) & (x <= t)
    values = np.where(
        inside,
        n * np.asarray(dist.pdf(x)) * _weighted_power(dist.log_cdf(x), n - 1, n * log_F_t),
        0.0,
    )
    return float(values) if values.ndim == 0 else values


def past_extropy_max_via_expectation(dist, n, t, ctx=None):
    """J(_tX_{n:n}) from E[f(X_{2n-1:2n-1}) | X_{2n-1:2n-1} <= t]."""
    ctx = resolve(ctx)
    n = _check_n(n)
    F_t = math.exp(_log_past_mass(dist, t))
    dist.require_square_integrable(n=n)
    m = 2 * n - 1

    def integrand(x):
        return np.asarray(dist.pdf(x)) * conditional_max_density(dist, m, t, x)

    upper = min(float(t), dist.support.upper)
    result = _integral(dist, integrand, dist.support.lower, upper, ctx)
    return _quadrature_value(-(n**2) / (2.0 * m * F_t), result)


def extropy_max(dist, n, ctx=None):
    """J(X_{n:n}) = -n^2 / 2 * integral of F^(2n-2) f^2 over the support."""
    ctx = resolve(ctx)
    n = _check_n(n)
    dist.require_square_integrable(n=n)

    def integrand(x):
        return np.square(dist.pdf(x)) * _weighted_power(dist.log_cdf(x), 2 * n - 2)

    result = _integral(dist, integrand, dist.support.lower, dist.support.upper, ctx)
    return _quadrature_value(-0.5 * n**2, result)


def tau_moment(dist, n, ctx=None):
    """Integral over (0, 1) of u^(n-1) tau(F^-1(sqrt u)); equals 2 * integral of F^(2n-2) f^2."""
    ctx = resolve(ctx)
    n = _check_n(n)
    dist.require_square_integrable(n=n)
    top = np.nextafter(1.0, 0.0)

    def integrand(u):
        v = np.clip(np.sqrt(u), np.finfo(float).tiny, top)
        # tau(F^-1(v)) = f(F^-1(v)) / v; F^-1(v) may round onto the support start
        return np.power(u, n - 1) * np.asarray(dist.pdf(dist.quantile(v))) / v

    return integrate(integrand, 0.0, 1.0, ctx.quadrature).value


def likelihood_ratio_decreasing(dist, n, t, x_grid, tol=MONOTONICITY_TOL):
    """True when g_{2n-1:2n-1}(x) / g_{2n+1:2n+1}(x) is non-increasing on the
    grid, i.e. the conditional maxima are likelihood-ratio ordered."""
    n = _check_n(n)
    x = np.sort(np.asarray(x_grid, dtype=float))
    x = x[(x > dist.support.lower) & (x <= t)]
    if x.size < 2:
        raise DomainError("likelihood ratio check needs at least two grid points in (lower, t]")
    ratio = conditional_max_density(dist, 2 * n - 1, t, x) / conditional_max_density(dist, 2 * n + 1, t, x)
    steps = np.diff(ratio)
    return bool(np.all(steps <= tol * np.maximum(1.0, np.abs(ratio[1:]))))


_SEQUENCES = {
    Extreme.MAX: past_extropy_max,
    Extreme.MIN: past_extropy_min,
}


def order_statistic_past_extropy(dist, spec, t, ctx=None):
    """Past extropy at t of the extreme named by an OrderStatSpec."""
    return _SEQUENCES[spec.which](dist, spec.n, t, ctx)


def order_statistic_sequence(dist, t, n_max, which=Extreme.MAX, ctx=None):
    """J(_tX_{n:n}) (or the minimum's) for n = 1..n_max as an N-axis ScanGrid."""
    ctx = resolve(ctx)
    specs = [OrderStatSpec(n, Extreme(which)) for n in range(1, _check_n(n_max) + 1)]
    values = map_ordered(lambda spec: order_statistic_past_extropy(dist, spec, t, ctx), specs, ctx.workers)
    ns = [spec.n for spec in specs]
    return ScanGrid(Axis.N, ns, values)


def theorem7_check(dist, t, n_max, ctx=None, tol=ORDER_STAT_TOL):
    """Is J(_tX_{n:n}) >= J(_tX_{n+1:n+1}) - tol for every n < n_max?"""
    if _check_n(n_max) < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    values = [v.value for v in order_statistic_sequence(dist, t, n_max, Extreme.MAX, ctx).values]
    first_violation = None
    for n, (current, following) in enumerate(zip(values[:-1], values[1:]), start=1):
        if current < following - tol:
            first_violation = n
            break
    hypothesis = float(t) < dist.density_mode()
    if not hypothesis:
        log.info(f"{dist.label}: f is not increasing on [lower, {t:g}]; decreasing-in-n is not implied")
    return MaxSequenceResult(first_violation is None, first_violation, values, hypothesis)


def first_increase(values, tol=ORDER_STAT_TOL):
    """1-based index n with values[n] > values[n-1] + tol, or None."""
    for n, (current, following) in enumerate(zip(values[:-1], values[1:]), start=1):
        if following > current + tol:
            return n
    return None

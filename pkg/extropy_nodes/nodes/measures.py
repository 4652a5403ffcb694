"""
Extropy Measures
================
Extropy, residual extropy and past extropy of a lifetime law, their Shannon
entropy companions, and the machinery around past extropy: the
decomposition J(X) = F^2(t) J(_tX) + Fbar^2(t) J(X_t), the reversed failure
rate and quantile representations, the analytic derivative
dJ/dt = -2 tau J - tau^2 / 2, the monotonicity criterion J <= -tau/4 and the
lower bound -tau/2.

All extropy-family values are <= 0. Closed forms are used when the family
provides them unless the context forces quadrature.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import xlogy

from .distributions import inactivity_density
from .errors import DomainError
from .grids import map_ordered
from .quadrature import integrate
from .settings import BOUND_TOL, MONOTONICITY_TOL, resolve

log = logging.getLogger("extropy-nodes")


class Method(str, Enum):
    CLOSED_FORM = "ClosedForm"
    QUADRATURE = "Quadrature"


@dataclass(frozen=True)
class MeasureValue:
    value: float
    method: Method
    error_estimate: float = 0.0


class Monotonicity(str, Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    NON_MONOTONE = "NonMonotone"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class MonotonicityVerdict:
    classification: Monotonicity
    # (t, sign of dJ/dt) with sign in {-1, 0, +1}
    witness_points: list = field(default_factory=list)


def _integral(dist, integrand, a, b, ctx):
    return integrate(integrand, a, b, ctx.quadrature, breakpoints=dist.breakpoints(a, b))


def squared_density_integral(dist, a, b, ctx=None):
    """Integral of f^2 over (a, b)."""
    ctx = resolve(ctx)
    dist.require_square_integrable(lower=a)
    return _integral(dist, lambda x: np.square(dist.pdf(x)), a, b, ctx)


def _past_mass(dist, t):
    F = dist.cdf(t)
    if not F > 0.0:
        raise DomainError(f"{dist.label}: F({t}) = 0, the past at t is empty")
    return F


def _future_mass(dist, t):
    S = dist.survival(t)
    if not S > 0.0:
        raise DomainError(f"{dist.label}: Fbar({t}) = 0, the residual life at t is empty")
    return S


def _quadrature_value(scale, result):
    return MeasureValue(scale * result.value, Method.QUADRATURE, abs(scale) * result.error_estimate)


# -- extropy family -------------------------------------------------------


def extropy(dist, ctx=None):
    """J(X) = -1/2 * integral of f^2 over the support."""
    ctx = resolve(ctx)
    if ctx.use_closed_form(dist.capabilities.extropy):
        log.debug(f"extropy {dist.label}: closed form")
        return MeasureValue(dist.closed_extropy(), Method.CLOSED_FORM)
    result = squared_density_integral(dist, dist.support.lower, dist.support.upper, ctx)
    return _quadrature_value(-0.5, result)


def residual_extropy(dist, t, ctx=None):
    """J(X_t) = -1/(2 Fbar^2(t)) * integral of f^2 over (t, upper)."""
    ctx = resolve(ctx)
    S = _future_mass(dist, t)
    a = max(float(t), dist.support.lower)
    result = squared_density_integral(dist, a, dist.support.upper, ctx)
    return _quadrature_value(-0.5 / S**2, result)


def past_extropy(dist, t, ctx=None):
    """J(_tX) = -1/(2 F^2(t)) * integral of f^2 over (lower, t)."""
    ctx = resolve(ctx)
    F = _past_mass(dist, t)
    if ctx.use_closed_form(dist.capabilities.past_extropy):
        log.debug(f"past extropy {dist.label} t={t:g}: closed form")
        return MeasureValue(dist.closed_past_extropy(float(t)), Method.CLOSED_FORM)
    upper = min(float(t), dist.support.upper)
    result = squared_density_integral(dist, dist.support.lower, upper, ctx)
    return _quadrature_value(-0.5 / F**2, result)


def past_extropy_via_tau(dist, t, ctx=None):
    """J(_tX) = -tau^2(t) / (2 f^2(t)) * integral of f^2 over (lower, t)."""
    ctx = resolve(ctx)
    _past_mass(dist, t)
    f_t = dist.pdf(t)
    if not f_t > 0.0:
        raise DomainError(f"{dist.label}: f({t}) = 0, the reversed failure rate form is undefined")
    tau = dist.reversed_failure_rate(t)
    upper = min(float(t), dist.support.upper)
    result = squared_density_integral(dist, dist.support.lower, upper, ctx)
    return _quadrature_value(-(tau**2) / (2.0 * f_t**2), result)


def past_extropy_via_quantile(dist, t, ctx=None):
    """J(_tX) = -1/(2 F^2(t)) * integral of f(F^-1(u)) over (0, F(t))."""
    ctx = resolve(ctx)
    F = _past_mass(dist, t)
    dist.require_square_integrable()
    result = integrate(lambda u: dist.pdf(dist.quantile(u)), 0.0, F, ctx.quadrature)
    return _quadrature_value(-0.5 / F**2, result)


def inactivity_extropy(dist, t, ctx=None):
    """Extropy of the inactivity time (t - X | X < t) from its own density."""
    ctx = resolve(ctx)
    _past_mass(dist, t)
    dist.require_square_integrable()
    t = float(t)
    a = max(0.0, t - dist.support.upper)
    b = t - dist.support.lower
    kinks = [t - p for p in dist.breakpoints(dist.support.lower, t)]
    result = integrate(
        lambda x: np.square(inactivity_density(dist, t, x)), a, b, ctx.quadrature, breakpoints=kinks
    )
    return _quadrature_value(-0.5, result)


# -- entropy companions ---------------------------------------------------


def _entropy_integral(dist, scale, a, b, ctx):
    def integrand(x):
        g = np.asarray(dist.pdf(x)) / scale
        return -xlogy(g, g)

    return _integral(dist, integrand, a, b, ctx)


def shannon_entropy(dist, ctx=None):
    """H(X) = -integral of f log f."""
    ctx = resolve(ctx)
    result = _entropy_integral(dist, 1.0, dist.support.lower, dist.support.upper, ctx)
    return _quadrature_value(1.0, result)


def residual_entropy(dist, t, ctx=None):
    """H(X; t): entropy of the residual life given survival to t."""
    ctx = resolve(ctx)
    S = _future_mass(dist, t)
    a = max(float(t), dist.support.lower)
    result = _entropy_integral(dist, S, a, dist.support.upper, ctx)
    return _quadrature_value(1.0, result)


def past_entropy(dist, t, ctx=None):
    """H(X; [t]): entropy of the past lifetime given failure before t."""
    ctx = resolve(ctx)
    F = _past_mass(dist, t)
    upper = min(float(t), dist.support.upper)
    result = _entropy_integral(dist, F, dist.support.lower, upper, ctx)
    return _quadrature_value(1.0, result)


# -- identities, derivative and shape -------------------------------------


def decomposition_residual(dist, t, ctx=None):
    """(J(X), F^2 J(_tX) + Fbar^2 J(X_t)); equal for every 0 < F(t) < 1."""
    ctx = resolve(ctx)
    F = dist.cdf(t)
    if not 0.0 < F < 1.0:
        raise DomainError(f"{dist.label}: decomposition needs 0 < F(t) < 1, got F({t}) = {F}")
    S = dist.survival(t)
    lhs = extropy(dist, ctx).value
    rhs = F**2 * past_extropy(dist, t, ctx).value + S**2 * residual_extropy(dist, t, ctx).value
    return lhs, rhs


def past_extropy_derivative(dist, t, ctx=None):
    """dJ(_tX)/dt = -2 tau(t) J(_tX) - tau^2(t) / 2."""
    J = past_extropy(dist, t, ctx).value
    tau = dist.reversed_failure_rate(t)
    return -2.0 * tau * J - 0.5 * tau**2


def past_extropy_lower_bound(dist, t):
    """-tau(t)/2; a lower bound for J(_tX) while f increases on [lower, t]."""
    return -0.5 * dist.reversed_failure_rate(t)


def bound_holds(dist, t, ctx=None, tol=BOUND_TOL):
    return bool(past_extropy(dist, t, ctx).value >= past_extropy_lower_bound(dist, t) - tol)


def _sign(value, tol):
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


def classify_monotonicity(dist, t_grid, ctx=None, tol=MONOTONICITY_TOL):
    """Classify J(_tX) over the grid from the sign of J(_tX) + tau(t)/4:
    non-positive everywhere means increasing, non-negative means decreasing."""
    ctx = resolve(ctx)
    points = sorted(float(t) for t in t_grid)
    if len(points) < 2:
        raise DomainError("monotonicity needs at least two grid points")

    def criterion(t):
        return past_extropy(dist, t, ctx).value + 0.25 * dist.reversed_failure_rate(t)

    values = map_ordered(criterion, points, ctx.workers)
    witnesses = [(t, _sign(-c, tol)) for t, c in zip(points, values)]

    if all(abs(c) <= tol for c in values):
        classification = Monotonicity.INDETERMINATE
    elif all(c <= tol for c in values):
        classification = Monotonicity.INCREASING
    elif all(c >= -tol for c in values):
        classification = Monotonicity.DECREASING
    else:
        classification = Monotonicity.NON_MONOTONE
    log.debug(f"monotonicity {dist.label} over {len(points)} points: {classification.value}")
    return MonotonicityVerdict(classification, witnesses)


def theorem3_hypothesis_holds(dist, u_grid, tol=MONOTONICITY_TOL):
    """True when f(F^-1(u)) is non-increasing across the grid; this is
    sufficient (not necessary) for J(_tX) to increase in t."""
    u = np.sort(np.asarray(u_grid, dtype=float))
    values = np.asarray(dist.pdf(dist.quantile(u)), dtype=float)
    steps = np.diff(values)
    return bool(np.all(steps <= tol * np.maximum(1.0, np.abs(values[1:]))))

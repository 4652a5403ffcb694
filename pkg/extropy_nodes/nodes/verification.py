"""
Verification
============
Runs the identity, bound, monotonicity and characterization checks against
one or more distributions and collects a JSON-serialisable report. A failed
check never raises: errors at individual points are recorded as witnesses
and mark the check failed.
"""

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import measures, order_stats, reconstruction
from .distributions import parallel_inactivity_cdf
from .errors import ExtropyError
from .quadrature import integrate
from .settings import (
    BOUND_TOL,
    FINITE_DIFFERENCE_STEP,
    MONOTONICITY_TOL,
    ORDER_STAT_TOL,
    relative_gap,
    resolve,
)

log = logging.getLogger("extropy-nodes")

# Probability levels at which each law is checked; t = F^-1(level).
CHECK_LEVELS = np.linspace(0.1, 0.9, 9)
ORDER_STAT_N = range(1, 7)
DECREASING_N_MAX = 10
SELF_CHARACTERIZATION_N_MAX = 3

IDENTITY_TOL = 1e-8
CLOSED_FORM_TOL = 1e-8
DERIVATIVE_TOL = 1e-5
RECONSTRUCTION_TOL = 1e-6
REDUCTION_TOL = 1e-9
NORMALISATION_TOL = 1e-9
TAU_MOMENT_TOL = 1e-7
LIKELIHOOD_GRID_SIZE = 33


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    max_error: float = 0.0
    witnesses: list = field(default_factory=list)

    def record(self, error, ok, **where):
        if math.isfinite(error):
            self.max_error = max(self.max_error, error)
        if not ok:
            self.passed = False
            self.witnesses.append({**where, "error": error})

    def fail(self, exc, **where):
        self.passed = False
        self.witnesses.append({**where, "exception": type(exc).__name__, "message": str(exc)})

    def note(self, **where):
        self.witnesses.append(where)

    def to_dict(self):
        return {"pass": self.passed, "max_error": self.max_error, "witnesses": self.witnesses}


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(check.passed for check in self.checks.values())

    def to_dict(self):
        return {name: check.to_dict() for name, check in self.checks.items()}


def _check_points(dist):
    return [float(t) for t in dist.quantile(CHECK_LEVELS)]


def _guard(check, dist, t, fn):
    """Run one point of a check; errors become witnesses."""
    try:
        fn()
    except ExtropyError as e:
        check.fail(e, dist=dist.label, t=t)


def _decomposition(check, dist, points, ctx):
    for t in points:
        def body(t=t):
            lhs, rhs = measures.decomposition_residual(dist, t, ctx)
            gap = abs(lhs - rhs)
            check.record(gap, gap <= IDENTITY_TOL, dist=dist.label, t=t)

        _guard(check, dist, t, body)


def _closed_form_agreement(check, dist, points, ctx):
    if not (dist.capabilities.past_extropy or dist.capabilities.extropy):
        check.note(dist=dist.label, skipped="no closed forms")
        return
    forced = replace(ctx, force_quadrature=True)
    if dist.capabilities.extropy:
        def body():
            gap = relative_gap(dist.closed_extropy(), measures.extropy(dist, forced).value)
            check.record(gap, gap <= CLOSED_FORM_TOL, dist=dist.label, measure="extropy")

        _guard(check, dist, None, body)
    if dist.capabilities.past_extropy:
        for t in points:
            def body(t=t):
                gap = relative_gap(dist.closed_past_extropy(t), measures.past_extropy(dist, t, forced).value)
                check.record(gap, gap <= CLOSED_FORM_TOL, dist=dist.label, t=t)

            _guard(check, dist, t, body)


def _tau_representation(check, dist, points, ctx):
    for t in points:
        def body(t=t):
            gap = relative_gap(
                measures.past_extropy_via_tau(dist, t, ctx).value, measures.past_extropy(dist, t, ctx).value
            )
            check.record(gap, gap <= IDENTITY_TOL, dist=dist.label, t=t)

        _guard(check, dist, t, body)


def _derivative_finite_difference(check, dist, points, ctx):
    h = FINITE_DIFFERENCE_STEP
    for t in points:
        if t - h <= dist.support.lower or t + h >= dist.support.upper:
            continue

        def body(t=t):
            analytic = measures.past_extropy_derivative(dist, t, ctx)
            ahead = measures.past_extropy(dist, t + h, ctx).value
            behind = measures.past_extropy(dist, t - h, ctx).value
            gap = abs(analytic - (ahead - behind) / (2.0 * h))
            # steep slopes near the origin carry truncation error h^2 |J'''| / 6
            check.record(gap, gap <= DERIVATIVE_TOL * max(1.0, abs(analytic)), dist=dist.label, t=t)

        _guard(check, dist, t, body)


def _derivative_sign_consistency(check, dist, points, ctx):
    for t in points:
        def body(t=t):
            criterion = measures.past_extropy(dist, t, ctx).value + 0.25 * dist.reversed_failure_rate(t)
            if abs(criterion) <= MONOTONICITY_TOL:
                return
            derivative = measures.past_extropy_derivative(dist, t, ctx)
            ok = np.sign(derivative) == np.sign(-criterion)
            check.record(0.0, bool(ok), dist=dist.label, t=t, derivative=derivative, criterion=criterion)

        _guard(check, dist, t, body)


def _reconstruction_round_trip(check, dist, points, ctx):
    table = reconstruction.reconstruction_table(dist, points, ctx)
    if len(table) < len(points):
        check.note(dist=dist.label, dropped=len(points) - len(table))
    for t, (_, _, gap) in table.rows():
        check.record(gap, gap <= RECONSTRUCTION_TOL, dist=dist.label, t=t)


def _order_statistic_reduction(check, dist, points, ctx):
    for t in points:
        def body(t=t):
            gap = relative_gap(
                order_stats.past_extropy_max(dist, 1, t, ctx).value, measures.past_extropy(dist, t, ctx).value
            )
            check.record(gap, gap <= REDUCTION_TOL, dist=dist.label, t=t)

        _guard(check, dist, t, body)


def _expectation_representation(check, dist, points, ctx):
    t = points[len(points) // 2]
    for n in ORDER_STAT_N:
        def body(n=n):
            gap = relative_gap(
                order_stats.past_extropy_max_via_expectation(dist, n, t, ctx).value,
                order_stats.past_extropy_max(dist, n, t, ctx).value,
            )
            check.record(gap, gap <= IDENTITY_TOL, dist=dist.label, t=t, n=n)

        _guard(check, dist, t, body)


def _conditional_density_normalisation(check, dist, points, ctx):
    t = points[len(points) // 2]
    a, b = dist.support.lower, min(t, dist.support.upper)
    for n in ORDER_STAT_N:
        def body(n=n):
            total = integrate(
                lambda x: order_stats.conditional_max_density(dist, n, t, x),
                a,
                b,
                ctx.quadrature,
                breakpoints=dist.breakpoints(a, b),
            ).value
            gap = abs(total - 1.0)
            check.record(gap, gap <= NORMALISATION_TOL, dist=dist.label, t=t, n=n)

        _guard(check, dist, t, body)


def _inactivity_max_distribution(check, dist, points, ctx):
    """1 - P(t - X_{n:n} <= x | X_{n:n} <= t) is the conditional maximum's mass below t - x."""
    t = points[len(points) // 2]
    a = dist.support.lower
    x = 0.5 * (t - a)
    for n in ORDER_STAT_N:
        def body(n=n):
            below = integrate(
                lambda s: order_stats.conditional_max_density(dist, n, t, s),
                a,
                t - x,
                ctx.quadrature,
                breakpoints=dist.breakpoints(a, t - x),
            ).value
            gap = abs((1.0 - parallel_inactivity_cdf(dist, n, t, x)) - below)
            check.record(gap, gap <= NORMALISATION_TOL, dist=dist.label, t=t, n=n)

        _guard(check, dist, t, body)


def _likelihood_ratio_order(check, dist, points, ctx):
    t = points[len(points) // 2]
    grid = np.linspace(dist.support.lower, t, LIKELIHOOD_GRID_SIZE)[1:]
    for n in ORDER_STAT_N:
        def body(n=n):
            ok = order_stats.likelihood_ratio_decreasing(dist, n, t, grid, MONOTONICITY_TOL)
            check.record(0.0, ok, dist=dist.label, t=t, n=n)

        _guard(check, dist, t, body)


def _tau_moment_identity(check, dist, points, ctx):
    for n in ORDER_STAT_N:
        def body(n=n):
            moment = order_stats.tau_moment(dist, n, ctx)
            gap = relative_gap(moment, -4.0 * order_stats.extropy_max(dist, n, ctx).value / n**2)
            check.record(gap, gap <= TAU_MOMENT_TOL, dist=dist.label, n=n)

        _guard(check, dist, None, body)


def _below_mode(dist, points):
    mode = dist.density_mode()
    return [t for t in points if t < mode]


def _max_decreasing_in_n(check, dist, points, ctx):
    eligible = _below_mode(dist, points)
    if not eligible:
        check.note(dist=dist.label, skipped="density is not increasing below any check point")
        return
    for t in eligible[:2]:
        def body(t=t):
            result = order_stats.theorem7_check(dist, t, DECREASING_N_MAX, ctx, ORDER_STAT_TOL)
            check.record(0.0, result.holds, dist=dist.label, t=t, first_violation=result.first_violation)

        _guard(check, dist, t, body)


def _tau_lower_bound(check, dist, points, ctx):
    eligible = _below_mode(dist, points)
    if not eligible:
        check.note(dist=dist.label, skipped="density is not increasing below any check point")
        return
    for t in eligible:
        def body(t=t):
            J = measures.past_extropy(dist, t, ctx).value
            bound = measures.past_extropy_lower_bound(dist, t)
            shortfall = max(0.0, bound - J)
            check.record(shortfall, measures.bound_holds(dist, t, ctx, BOUND_TOL), dist=dist.label, t=t)

        _guard(check, dist, t, body)


def _characterization_self(check, dist, points, ctx):
    def body():
        report = reconstruction.characterize(dist, dist, SELF_CHARACTERIZATION_N_MAX, points[::4], ctx=ctx)
        ok = report.verdict is reconstruction.Verdict.INDISTINGUISHABLE
        check.record(report.max_discrepancy, ok, dist=dist.label)

    _guard(check, dist, None, body)


CHECKS = {
    "decomposition": _decomposition,
    "closed_form_agreement": _closed_form_agreement,
    "tau_representation": _tau_representation,
    "derivative_finite_difference": _derivative_finite_difference,
    "derivative_sign_consistency": _derivative_sign_consistency,
    "reconstruction_round_trip": _reconstruction_round_trip,
    "order_statistic_reduction": _order_statistic_reduction,
    "expectation_representation": _expectation_representation,
    "conditional_density_normalisation": _conditional_density_normalisation,
    "inactivity_max_distribution": _inactivity_max_distribution,
    "likelihood_ratio_order": _likelihood_ratio_order,
    "tau_moment_identity": _tau_moment_identity,
    "max_decreasing_in_n": _max_decreasing_in_n,
    "tau_lower_bound": _tau_lower_bound,
    "characterization_self": _characterization_self,
}


def _characterization_against(check, dist, other, ctx):
    points = sorted(set(_check_points(dist)[::4]) | set(_check_points(other)[::4]))
    points = [t for t in points if dist.cdf(t) > 0.0 and other.cdf(t) > 0.0]
    try:
        report = reconstruction.characterize(dist, other, SELF_CHARACTERIZATION_N_MAX, points, ctx=ctx)
    except ExtropyError as e:
        check.fail(e, dist=dist.label, against=other.label)
        return
    check.record(report.max_discrepancy, True, dist=dist.label)
    check.note(dist=dist.label, against=other.label, **report.to_dict())


def run_checks(dists, against=None, ctx=None):
    ctx = resolve(ctx)
    report = VerificationReport({name: CheckResult(name) for name in CHECKS})
    for dist in dists:
        log.info(f"verify {dist.label}")
        points = _check_points(dist)
        for name, fn in CHECKS.items():
            try:
                fn(report.checks[name], dist, points, ctx)
            except ExtropyError as e:
                report.checks[name].fail(e, dist=dist.label)
            log.debug(f"  {name}: {'pass' if report.checks[name].passed else 'FAIL'}")
    if against is not None:
        check = CheckResult("characterization")
        for dist in dists:
            _characterization_against(check, dist, against, ctx)
        report.checks[check.name] = check
    return report

"""
Reconstruction & Characterization
=================================
Past extropy is pinned down by the reversed failure rate. Solving
dJ/dt = -2 tau J - tau^2 / 2 backwards from J(_{upper}X) = J(X) gives

    J(_tX) = exp(2 L(t)) * [ J(X) + 1/2 * integral_t^upper tau^2(s) exp(-2 L(s)) ds ],
    L(t)   = integral_t^upper tau(s) ds = -log F(t).

When tau comes from a known law L is taken from log F directly; for an opaque
tau callable it is integrated numerically.

The characterization checker compares two laws through J(_tX_{n:n}) on an
(n, t) lattice. Agreement on a finite lattice is evidence of equality in
distribution, never a proof of it.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError
from .grids import Axis, map_ordered, scan
from .measures import extropy, past_extropy
from .order_stats import past_extropy_max
from .quadrature import integrate
from .settings import CHARACTERIZATION_THRESHOLD, resolve

log = logging.getLogger("extropy-nodes")

PROFILE_GRID = np.linspace(0.01, 0.99, 99)


@dataclass(frozen=True)
class TauFunction:
    """A reversed failure rate t -> tau(t) >= 0 on (lower, upper).

    ``source`` is the distribution tau was taken from, if any; it enables
    the log F shortcut for the integrating factor.
    """

    func: object
    lower: float
    upper: float = math.inf
    source: object = None

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"tau domain ({self.lower}, {self.upper}) is empty")

    @classmethod
    def from_distribution(cls, dist):
        return cls(dist.reversed_failure_rate, dist.support.lower, dist.support.upper, source=dist)

    def __call__(self, t):
        return np.asarray(self.func(t), dtype=float)


def _log_cdf_ratio(tau, t, s, cfg):
    """2 * integral_t^s tau = 2 log(F(s) / F(t)) for each s >= t, accumulated piece by piece."""
    s = np.asarray(s, dtype=float)
    order = np.argsort(s)
    edges = np.concatenate([[t], s[order]])
    pieces = [
        integrate(tau, a, b, cfg).value if b > a else 0.0 for a, b in zip(edges[:-1], edges[1:])
    ]
    out = np.empty_like(s)
    out[order] = 2.0 * np.cumsum(pieces)
    return out


def _outer_cutoff(tau, t, weight, abs_tol):
    """Point past which tau^2 * weight stays below abs_tol on a doubling scan."""
    step = 1.0
    quiet = 0
    s = t
    while step < 1e12:
        s = t + step
        if float(tau(s)) ** 2 * weight < abs_tol:
            quiet += 1
            if quiet == 2:
                return s
        else:
            quiet = 0
        step *= 2.0
    return s


def reconstruct_past_extropy(tau, j_infinity, t, ctx=None):
    """Past extropy at t rebuilt from tau and J(X)."""
    ctx = resolve(ctx)
    if j_infinity > 0:
        raise DomainError(f"J(X) is never positive, got {j_infinity}")
    t = float(t)
    if not t > tau.lower:
        raise DomainError(f"t={t} is not inside the tau domain ({tau.lower}, {tau.upper})")
    if t >= tau.upper:
        return float(j_infinity)

    cfg = ctx.quadrature
    if tau.source is not None:
        log_F_t = tau.source.log_cdf(t)
        if not math.isfinite(log_F_t):
            raise DomainError(f"{tau.source.label}: F({t}) = 0")

        def integrand(s):
            ratio = np.exp(2.0 * (np.asarray(tau.source.log_cdf(s)) - log_F_t))
            return np.square(tau(s)) * ratio

        tail = integrate(integrand, t, tau.upper, cfg, breakpoints=tau.source.breakpoints(t, tau.upper))
        return j_infinity * math.exp(-2.0 * log_F_t) + 0.5 * tail.value

    # opaque tau: integrating factor by quadrature
    L_t = integrate(tau, t, tau.upper, cfg).value
    weight = math.exp(2.0 * L_t)
    upper = tau.upper
    if math.isinf(upper):
        upper = _outer_cutoff(tau, t, weight, cfg.abs_tol)
        log.debug(f"reconstruct: outer integral truncated at {upper:g}")

    def nested(s):
        s = np.asarray(s, dtype=float)
        # F(s)^2 / F(t)^2
        return np.square(tau(s)) * np.exp(_log_cdf_ratio(tau, t, s, cfg))

    tail = integrate(nested, t, upper, cfg)
    return weight * j_infinity + 0.5 * tail.value


def tau_log_cdf_identity(dist, t, ctx=None):
    """(exp(2 * integral_t^upper tau), F(t)^-2); equal whenever 0 < F(t) < 1."""
    ctx = resolve(ctx)
    F = dist.cdf(t)
    if not 0.0 < F < 1.0:
        raise DomainError(f"{dist.label}: identity needs 0 < F(t) < 1, got F({t}) = {F}")
    upper = dist.support.upper
    result = integrate(
        dist.reversed_failure_rate, float(t), upper, ctx.quadrature, breakpoints=dist.breakpoints(t, upper)
    )
    return math.exp(2.0 * result.value), F**-2


def tau_profile(dist, v_grid):
    """[(v, tau(F^-1(v)))] over the grid."""
    v = np.asarray(v_grid, dtype=float)
    values = np.atleast_1d(dist.reversed_failure_rate(dist.quantile(v)))
    return [(float(a), float(b)) for a, b in zip(np.atleast_1d(v), values)]


class Verdict(str, Enum):
    INDISTINGUISHABLE = "Indistinguishable"
    DISTINCT = "Distinct"


@dataclass(frozen=True)
class CharacterizationReport:
    verdict: Verdict
    max_discrepancy: float
    # (n, t, |dJ|) of the largest lattice discrepancy; set when Distinct
    witness: tuple = None
    profile_discrepancy: float = 0.0
    lattice: dict = field(default_factory=dict)
    support_starts_at_zero: bool = True

    def to_dict(self):
        witness = None
        if self.witness is not None:
            n, t, gap = self.witness
            witness = {"n": n, "t": t, "discrepancy": gap}
        return {
            "verdict": self.verdict.value,
            "max_discrepancy": self.max_discrepancy,
            "witness": witness,
            "profile_discrepancy": self.profile_discrepancy,
            "lattice": self.lattice,
            "support_starts_at_zero": self.support_starts_at_zero,
        }


def characterize(dist_x, dist_y, n_max, t_grid, threshold=CHARACTERIZATION_THRESHOLD, ctx=None):
    """Compare J(_tX_{n:n}) with J(_tY_{n:n}) for n = 1..n_max and t on the grid."""
    ctx = resolve(ctx)
    if int(n_max) != n_max or n_max < 3:
        raise DomainError(f"characterization needs n_max >= 3, got {n_max}")
    ts = sorted(float(t) for t in t_grid)
    if not ts:
        raise DomainError("characterization needs at least one t")
    for t in ts:
        if not (dist_x.cdf(t) > 0.0 and dist_y.cdf(t) > 0.0):
            raise DomainError(f"t={t} is outside the positive-cdf region of {dist_x.label} or {dist_y.label}")

    cells = [(n, t) for n in range(1, int(n_max) + 1) for t in ts]
    log.info(f"characterize {dist_x.label} vs {dist_y.label}: {len(cells)} lattice cells")

    def gap(cell):
        n, t = cell
        return abs(past_extropy_max(dist_x, n, t, ctx).value - past_extropy_max(dist_y, n, t, ctx).value)

    gaps = map_ordered(gap, cells, ctx.workers)
    worst = int(np.argmax(gaps))
    max_discrepancy = float(gaps[worst])

    profile_x = np.array([v for _, v in tau_profile(dist_x, PROFILE_GRID)])
    profile_y = np.array([v for _, v in tau_profile(dist_y, PROFILE_GRID)])
    profile_discrepancy = float(np.max(np.abs(profile_x - profile_y)))

    distinct = max_discrepancy > threshold
    n_w, t_w = cells[worst]
    return CharacterizationReport(
        verdict=Verdict.DISTINCT if distinct else Verdict.INDISTINGUISHABLE,
        max_discrepancy=max_discrepancy,
        witness=(n_w, t_w, max_discrepancy) if distinct else None,
        profile_discrepancy=profile_discrepancy,
        lattice={"n": list(range(1, int(n_max) + 1)), "t": ts, "threshold": threshold},
        support_starts_at_zero=dist_x.support.lower == 0.0 and dist_y.support.lower == 0.0,
    )


def reconstruction_table(dist, t_points, ctx=None):
    """ScanGrid of (reconstructed, direct, abs_diff) per t; out-of-domain t are dropped."""
    ctx = resolve(ctx)
    tau = TauFunction.from_distribution(dist)
    j_infinity = extropy(dist, ctx).value

    def row(t):
        rebuilt = reconstruct_past_extropy(tau, j_infinity, t, ctx)
        direct = past_extropy(dist, t, ctx).value
        return rebuilt, direct, abs(rebuilt - direct)

    return scan(row, t_points, Axis.T, ctx.workers)

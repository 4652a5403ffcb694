"""
Adaptive Quadrature
===================
Gauss-Kronrod (7/15) adaptive integration behind every squared-density and
weighted integral in the package.

The interval with the largest error estimate is bisected until the summed
estimate meets max(abs_tol, rel_tol * |value|). Semi-infinite ranges are
mapped onto (0, 1) with x = a + u / (1 - u). Rule nodes are strictly interior,
so integrable endpoint singularities are never evaluated.
"""

import heapq
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentIntegral, DomainError, ToleranceNotReached

log = logging.getLogger("extropy-nodes")

# Kronrod abscissae on [0, 1] in decreasing order; the last one is the centre.
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
# 7-point Gauss weights for _XGK[1], _XGK[3], _XGK[5] and the centre.
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

_KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_WEIGHTS = np.zeros(15)
_GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
_GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
_GAUSS_WEIGHTS[7] = _WG[3]

# The estimate must at least double across this many consecutive generations
# of _GENERATION_SIZE bisections to be reported as divergent.
_DIVERGENCE_GENERATIONS = 5
_GENERATION_SIZE = 16


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and subdivision budget for every numeric integral."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "optional": {
                "rel_tol": (
                    "FLOAT",
                    {
                        "default": 1e-10,
                        "min": 0.0,
                        "flag": "--quad-rel-tol",
                        "tooltip": "Relative tolerance of every numeric integral",
                    },
                ),
                "abs_tol": (
                    "FLOAT",
                    {
                        "default": 1e-12,
                        "min": 0.0,
                        "flag": "--quad-abs-tol",
                        "tooltip": "Absolute tolerance of every numeric integral",
                    },
                ),
                "max_subdivisions": (
                    "INT",
                    {
                        "default": 2000,
                        "min": 1,
                        "flag": "--max-subdiv",
                        "tooltip": "Bisections allowed before giving up",
                    },
                ),
            }
        }

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol}")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be an integer >= 1, got {self.max_subdivisions}")


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    subdivisions_used: int


def _evaluate(f, x):
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        raise DivergentIntegral(f"integrand is not finite on [{x[0]:.6g}, {x[-1]:.6g}]")
    return y


def _apply_rule(f, a, b):
    """Kronrod estimate on [a, b] and |Kronrod - Gauss| as its error."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = _evaluate(f, center + half * _KRONROD_NODES)
    kronrod = half * float(np.dot(_KRONROD_WEIGHTS, fx))
    gauss = half * float(np.dot(_GAUSS_WEIGHTS, fx))
    return kronrod, abs(kronrod - gauss)


def _semi_infinite(f, a):
    def mapped(u):
        one_minus = 1.0 - u
        return np.asarray(f(a + u / one_minus), dtype=float) / one_minus**2

    return mapped


def integrate(f, a, b, cfg=None, breakpoints=()):
    """Integrate a vectorised integrand over (a, b); b may be +inf.

    ``breakpoints`` seeds the initial partition (kinks, jumps, table knots);
    points outside (a, b) are ignored. Only bisections count against
    ``max_subdivisions``.
    """
    cfg = cfg or QuadratureConfig()
    a = float(a)
    b = float(b)
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise DomainError(f"integration limits must satisfy a < b, got ({a}, {b})")
    if math.isinf(a):
        raise DomainError("lower integration limit must be finite")

    if math.isinf(b):
        g = _semi_infinite(f, a)
        lo, hi = 0.0, 1.0
        cuts = [(p - a) / (1.0 + p - a) for p in breakpoints if a < p < b]
    else:
        g = f
        lo, hi = a, b
        cuts = [p for p in breakpoints if a < p < b]
    edges = sorted({lo, hi, *cuts})

    heap = []
    for left, right in zip(edges[:-1], edges[1:]):
        value, err = _apply_rule(g, left, right)
        heap.append((-err, left, right, value))
    heapq.heapify(heap)
    total = math.fsum(item[3] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)

    subdivisions = 0
    checkpoint = abs(total)
    growth_run = 0
    while total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total)):
        if subdivisions >= cfg.max_subdivisions:
            partial = IntegralResult(total, total_err, subdivisions)
            raise ToleranceNotReached(
                f"tolerance not reached after {subdivisions} subdivisions "
                f"(estimate {total:.12g}, error {total_err:.3g})",
                result=partial,
            )
        neg_err, left, right, value = heapq.heappop(heap)
        mid = 0.5 * (left + right)
        v1, e1 = _apply_rule(g, left, mid)
        v2, e2 = _apply_rule(g, mid, right)
        heapq.heappush(heap, (-e1, left, mid, v1))
        heapq.heappush(heap, (-e2, mid, right, v2))
        total += v1 + v2 - value
        total_err += e1 + e2 + neg_err
        subdivisions += 1

        if not math.isfinite(total):
            raise DivergentIntegral(f"integral estimate overflowed on ({a}, {b})")
        if subdivisions % _GENERATION_SIZE == 0:
            current = abs(total)
            if current > cfg.abs_tol and current >= 2.0 * checkpoint:
                growth_run += 1
            else:
                growth_run = 0
            checkpoint = current
            if growth_run >= _DIVERGENCE_GENERATIONS:
                raise DivergentIntegral(
                    f"integral over ({a}, {b}) keeps doubling "
                    f"(estimate {total:.6g} after {subdivisions} subdivisions)"
                )

    value = math.fsum(item[3] for item in heap)
    error = math.fsum(-item[0] for item in heap)
    log.debug(f"integrate({a:.6g}, {b:.6g}): {value:.12g} +/- {error:.2g}, {subdivisions} subdivisions")
    return IntegralResult(value, error, subdivisions)

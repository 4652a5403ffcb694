"""
Settings
========
Evaluation context and the tolerances shared by the CLI, the verification
suite and the tests.
"""

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .quadrature import QuadratureConfig

# Band on J(_tX) + tau(t)/4 inside which no sign is declared.
MONOTONICITY_TOL = 1e-9
# Consecutive-difference tolerance when checking decreasing-in-n.
ORDER_STAT_TOL = 1e-10
# Lattice discrepancy above which two laws are reported Distinct.
CHARACTERIZATION_THRESHOLD = 1e-7
# Slack on the comparison J(_tX) >= -tau(t)/2.
BOUND_TOL = 1e-10
# Finite-difference step used only as an oracle for the analytic derivative.
FINITE_DIFFERENCE_STEP = 1e-5

FIGURE_T = 0.5
FIGURE_N_MAX = 10
FIGURE_3_RANGE = (0.05, 1.5, 100)

CSV_FLOAT_FORMAT = "%.12g"


@dataclass(frozen=True)
class EvaluationContext:
    """How measures are evaluated: quadrature settings, whether closed forms
    may be used, and how many threads grid scans may use."""

    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    force_quadrature: bool = False
    workers: int = 1

    def __post_init__(self):
        if int(self.workers) != self.workers or self.workers < 1:
            raise DomainError(f"workers must be an integer >= 1, got {self.workers}")

    def use_closed_form(self, available):
        return available and not self.force_quadrature


DEFAULT_CONTEXT = EvaluationContext()


def resolve(ctx):
    return DEFAULT_CONTEXT if ctx is None else ctx


def relative_gap(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b)) if math.isfinite(a) and math.isfinite(b) else math.inf

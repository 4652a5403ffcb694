"""
Lifetime Distributions
======================
The distribution abstraction and the parametric catalog used everywhere else:
Exponential, Uniform(0, b), Power on (0, 1), Pareto, two-parameter Weibull and
a Tabulated law read from an (x, F) grid.

Every evaluation accepts scalars or numpy arrays and returns the same shape
(a plain float for scalar input). Instances are immutable.
"""

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
import pandas as pd
from scipy.interpolate import PchipInterpolator
from scipy.optimize import bisect

from .errors import DivergentIntegral, DomainError, SpecParseError

QUANTILE_XTOL = 1e-12
TABLE_TAIL_TOLERANCE = 1e-6


class Family(str, Enum):
    EXPONENTIAL = "exp"
    UNIFORM = "unif"
    POWER = "power"
    PARETO = "pareto"
    WEIBULL2 = "weibull2"
    TABULATED = "table"


@dataclass(frozen=True)
class Support:
    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower >= 0:
            raise DomainError(f"lifetimes are non-negative: support lower bound {self.lower} < 0")
        if not self.lower < self.upper:
            raise DomainError(f"empty support ({self.lower}, {self.upper})")

    @property
    def bounded(self):
        return math.isfinite(self.upper)


@dataclass(frozen=True)
class ClosedFormCapability:
    past_extropy: bool = False
    extropy: bool = False
    reversed_failure_rate: bool = False


def _unwrap(values):
    values = np.asarray(values, dtype=float)
    return float(values) if values.ndim == 0 else values


def _positive(name, value):
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a finite positive number, got {value}")
    return value


class Distribution:
    """Base class: subclasses implement the ``_pdf``/``_cdf``/``_quantile``
    kernels on points inside the support; masking happens here."""

    family = None
    PARAMETERS = ()
    capabilities = ClosedFormCapability()

    def __init__(self, support):
        self.support = support

    # -- identity ---------------------------------------------------------

    @property
    def parameters(self):
        return {name: getattr(self, name) for name in self.PARAMETERS}

    @property
    def label(self):
        values = ",".join(f"{v:g}" for v in self.parameters.values())
        return f"{self.family.value}:{values}"

    def __repr__(self):
        args = ", ".join(f"{k}={v:g}" for k, v in self.parameters.items())
        return f"{type(self).__name__}({args})"

    def __eq__(self, other):
        return type(self) is type(other) and self.parameters == other.parameters

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.parameters.items())))

    # -- evaluation -------------------------------------------------------

    def _interior(self, x):
        """Replace points outside the support by a harmless interior value."""
        lower, upper = self.support.lower, self.support.upper
        safe = lower + 1.0 if not self.support.bounded else 0.5 * (lower + upper)
        return np.where((x >= lower) & (x <= upper), x, safe)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.support.lower) & (x <= self.support.upper)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            values = np.where(inside, self._pdf(self._interior(x)), 0.0)
        return _unwrap(values)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            inner = np.clip(self._cdf(self._interior(x)), 0.0, 1.0)
        values = np.where(x <= self.support.lower, 0.0, np.where(x >= self.support.upper, 1.0, inner))
        return _unwrap(values)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            inner = np.clip(self._survival(self._interior(x)), 0.0, 1.0)
        values = np.where(x <= self.support.lower, 1.0, np.where(x >= self.support.upper, 0.0, inner))
        return _unwrap(values)

    def log_cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            inner = np.minimum(self._log_cdf(self._interior(x)), 0.0)
        values = np.where(x <= self.support.lower, -np.inf, np.where(x >= self.support.upper, 0.0, inner))
        return _unwrap(values)

    def log_survival(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            inner = np.minimum(self._log_survival(self._interior(x)), 0.0)
        values = np.where(x <= self.support.lower, 0.0, np.where(x >= self.support.upper, -np.inf, inner))
        return _unwrap(values)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if not np.all((u > 0.0) & (u < 1.0)):
            raise DomainError(f"quantile needs probabilities in (0, 1), got {u}")
        return _unwrap(self._quantile(u))

    def reversed_failure_rate(self, t):
        """tau(t) = f(t) / F(t)."""
        F = np.asarray(self.cdf(t))
        if np.any(F <= 0.0):
            raise DomainError(f"reversed failure rate needs F(t) > 0; t={t} is at or below the support")
        return _unwrap(np.asarray(self.pdf(t)) / F)

    # -- kernels (override) -----------------------------------------------

    def _pdf(self, x):
        raise NotImplementedError

    def _cdf(self, x):
        raise NotImplementedError

    def _survival(self, x):
        return 1.0 - self._cdf(x)

    def _log_cdf(self, x):
        return np.log(self._cdf(x))

    def _log_survival(self, x):
        return np.log1p(-self._cdf(x))

    def _quantile(self, u):
        raise NotImplementedError

    # -- closed forms and shape facts ------------------------------------

    def closed_extropy(self):
        raise NotImplementedError(f"{self!r} has no closed-form extropy")

    def closed_past_extropy(self, t):
        raise NotImplementedError(f"{self!r} has no closed-form past extropy")

    def require_square_integrable(self, n=1, lower=None):
        """Raise DivergentIntegral when the integral of f^2 F^(2n-2) from
        ``lower`` (default: the support start) to the support end is infinite."""

    def _integrates_from_origin(self, lower):
        return lower is None or lower <= self.support.lower

    def density_mode(self):
        """Point T with f increasing on [lower, T]; ``lower`` when f never increases."""
        raise NotImplementedError

    def breakpoints(self, a, b):
        """Points in (a, b) where the integrand of a density integral may kink."""
        return [p for p in (self.support.lower, self.support.upper) if a < p < b]


class Exponential(Distribution):
    family = Family.EXPONENTIAL
    PARAMETERS = ("lam",)
    capabilities = ClosedFormCapability(past_extropy=True, extropy=True, reversed_failure_rate=True)

    def __init__(self, lam):
        self.lam = _positive("lambda", lam)
        super().__init__(Support(0.0, math.inf))

    def _pdf(self, x):
        return self.lam * np.exp(-self.lam * x)

    def _cdf(self, x):
        return -np.expm1(-self.lam * x)

    def _survival(self, x):
        return np.exp(-self.lam * x)

    def _log_cdf(self, x):
        return np.log(-np.expm1(-self.lam * x))

    def _log_survival(self, x):
        return -self.lam * x

    def _quantile(self, u):
        return -np.log1p(-u) / self.lam

    def closed_extropy(self):
        return -self.lam / 4.0

    def closed_past_extropy(self, t):
        decay = math.exp(-self.lam * t)
        return -(self.lam / 4.0) * (1.0 + decay) / (-math.expm1(-self.lam * t))

    def density_mode(self):
        return self.support.lower


class Uniform(Distribution):
    family = Family.UNIFORM
    PARAMETERS = ("b",)
    capabilities = ClosedFormCapability(past_extropy=True, extropy=True, reversed_failure_rate=True)

    def __init__(self, b):
        self.b = _positive("b", b)
        super().__init__(Support(0.0, self.b))

    def _pdf(self, x):
        return np.full_like(x, 1.0 / self.b)

    def _cdf(self, x):
        return x / self.b

    def _quantile(self, u):
        return self.b * u

    def closed_extropy(self):
        return -0.5 / self.b

    def closed_past_extropy(self, t):
        return -0.5 / min(t, self.b)

    def density_mode(self):
        return self.b


class Power(Distribution):
    """f(x) = alpha * x^(alpha - 1) on (0, 1)."""

    family = Family.POWER
    PARAMETERS = ("alpha",)
    capabilities = ClosedFormCapability(past_extropy=True, extropy=True, reversed_failure_rate=True)

    def __init__(self, alpha):
        self.alpha = _positive("alpha", alpha)
        super().__init__(Support(0.0, 1.0))

    def _pdf(self, x):
        return self.alpha * np.power(x, self.alpha - 1.0)

    def _cdf(self, x):
        return np.power(x, self.alpha)

    def _log_cdf(self, x):
        return self.alpha * np.log(x)

    def _quantile(self, u):
        return np.power(u, 1.0 / self.alpha)

    def require_square_integrable(self, n=1, lower=None):
        # f^2 F^(2n-2) ~ x^(2 alpha n - 2) near 0
        if self._integrates_from_origin(lower) and 2.0 * self.alpha * n <= 1.0:
            raise DivergentIntegral(
                f"{self!r}: the integral of f^2 F^(2n-2) diverges at 0 for 2 alpha n <= 1 (n={n})"
            )

    def closed_extropy(self):
        self.require_square_integrable()
        return -self.alpha**2 / (2.0 * (2.0 * self.alpha - 1.0))

    def closed_past_extropy(self, t):
        self.require_square_integrable()
        return -self.alpha**2 / (2.0 * (2.0 * self.alpha - 1.0) * min(t, 1.0))

    def density_mode(self):
        return 1.0 if self.alpha >= 1.0 else self.support.lower


class Pareto(Distribution):
    """f(x) = theta * x0^theta / x^(theta + 1) for x > x0."""

    family = Family.PARETO
    PARAMETERS = ("theta", "x0")
    capabilities = ClosedFormCapability(past_extropy=True, extropy=True, reversed_failure_rate=True)

    def __init__(self, theta, x0):
        self.theta = _positive("theta", theta)
        self.x0 = _positive("x0", x0)
        super().__init__(Support(self.x0, math.inf))

    def _pdf(self, x):
        return self.theta * self.x0**self.theta / np.power(x, self.theta + 1.0)

    def _cdf(self, x):
        return -np.expm1(self.theta * np.log(self.x0 / x))

    def _survival(self, x):
        return np.power(self.x0 / x, self.theta)

    def _log_cdf(self, x):
        return np.log1p(-np.power(self.x0 / x, self.theta))

    def _log_survival(self, x):
        return self.theta * np.log(self.x0 / x)

    def _quantile(self, u):
        return self.x0 * np.power(1.0 - u, -1.0 / self.theta)

    def closed_extropy(self):
        return -self.theta**2 / (2.0 * (2.0 * self.theta + 1.0) * self.x0)

    def closed_past_extropy(self, t):
        # r = (x0/t)^theta
        theta, x0 = self.theta, self.x0
        log_r = theta * math.log(x0 / t)
        r = math.exp(log_r)
        scale = theta**2 / (2.0 * (2.0 * theta + 1.0) * math.expm1(log_r) ** 2)
        return scale * (r * r / t - 1.0 / x0)

    def density_mode(self):
        return self.support.lower


class Weibull2(Distribution):
    """f(x) = lam * alpha * x^(alpha - 1) * exp(-lam * x^alpha)."""

    family = Family.WEIBULL2
    PARAMETERS = ("alpha", "lam")
    capabilities = ClosedFormCapability(reversed_failure_rate=True)

    def __init__(self, alpha, lam):
        self.alpha = _positive("alpha", alpha)
        self.lam = _positive("lambda", lam)
        super().__init__(Support(0.0, math.inf))

    def _pdf(self, x):
        xa = np.power(x, self.alpha)
        return self.lam * self.alpha * np.power(x, self.alpha - 1.0) * np.exp(-self.lam * xa)

    def _cdf(self, x):
        return -np.expm1(-self.lam * np.power(x, self.alpha))

    def _survival(self, x):
        return np.exp(-self.lam * np.power(x, self.alpha))

    def _log_cdf(self, x):
        return np.log(-np.expm1(-self.lam * np.power(x, self.alpha)))

    def _log_survival(self, x):
        return -self.lam * np.power(x, self.alpha)

    def _quantile(self, u):
        return np.power(-np.log1p(-u) / self.lam, 1.0 / self.alpha)

    def require_square_integrable(self, n=1, lower=None):
        # f^2 F^(2n-2) ~ x^(2 alpha n - 2) near 0
        if self._integrates_from_origin(lower) and 2.0 * self.alpha * n <= 1.0:
            raise DivergentIntegral(
                f"{self!r}: the integral of f^2 F^(2n-2) diverges at 0 for 2 alpha n <= 1 (n={n})"
            )

    def density_mode(self):
        if self.alpha <= 1.0:
            return self.support.lower
        return ((self.alpha - 1.0) / (self.lam * self.alpha)) ** (1.0 / self.alpha)


class Tabulated(Distribution):
    """Law given by an (x, F) grid; F is interpolated by a monotone cubic
    (PCHIP) and the pdf is its analytic derivative."""

    family = Family.TABULATED
    capabilities = ClosedFormCapability()

    def __init__(self, x, F, source=""):
        x = np.asarray(x, dtype=float)
        F = np.asarray(F, dtype=float)
        if x.ndim != 1 or x.shape != F.shape or x.size < 2:
            raise DomainError("tabulated law needs two equal-length columns with at least 2 rows")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(F))):
            raise DomainError("tabulated law contains non-finite values")
        if np.any(np.diff(x) <= 0) or np.any(np.diff(F) <= 0):
            raise DomainError("tabulated x and F must both be strictly increasing")
        if F[0] < 0.0 or F[-1] > 1.0:
            raise DomainError("tabulated F values must lie in [0, 1]")
        if F[0] != 0.0:
            raise DomainError(f"tabulated F must start at 0, got {F[0]}")
        if F[-1] < 1.0 - TABLE_TAIL_TOLERANCE:
            raise DomainError(f"tabulated F must reach 1 - {TABLE_TAIL_TOLERANCE:g}, got {F[-1]}")
        self.x = x
        self.F = F
        self.source = source
        self._interpolant = PchipInterpolator(x, F, extrapolate=False)
        self._density = self._interpolant.derivative()
        super().__init__(Support(float(x[0]), float(x[-1])))

    @property
    def label(self):
        return f"table:{self.source}" if self.source else f"table:{self.x.size}pts"

    def __repr__(self):
        return f"Tabulated({self.x.size} points on [{self.x[0]:g}, {self.x[-1]:g}])"

    def __eq__(self, other):
        return (
            isinstance(other, Tabulated)
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.F, other.F)
        )

    def __hash__(self):
        return hash((self.x.tobytes(), self.F.tobytes()))

    def _pdf(self, x):
        return np.maximum(self._density(x), 0.0)

    def _cdf(self, x):
        return self._interpolant(x)

    def _quantile(self, u):
        top = self.F[-1]
        lower, upper = self.support.lower, self.support.upper
        flat = np.ravel(u)
        roots = np.empty_like(flat)
        for i, level in enumerate(flat):
            if level >= top:
                roots[i] = upper
                continue
            roots[i] = bisect(
                lambda x, level=level: float(self._interpolant(x)) - level,
                lower,
                upper,
                xtol=QUANTILE_XTOL,
            )
        return roots.reshape(np.shape(u))

    def density_mode(self):
        return float(self.x[int(np.argmax(self._density(self.x)))])

    def breakpoints(self, a, b):
        return [p for p in self.x if a < p < b]


FAMILY_MAPPINGS = {
    Family.EXPONENTIAL.value: Exponential,
    Family.UNIFORM.value: Uniform,
    Family.POWER.value: Power,
    Family.PARETO.value: Pareto,
    Family.WEIBULL2.value: Weibull2,
}


def inactivity_density(dist, t, x):
    """Density of the inactivity time (t - X | X < t): f(t - x) / F(t) on (0, t)."""
    F_t = dist.cdf(t)
    if F_t <= 0.0:
        raise DomainError(f"inactivity time needs F(t) > 0; t={t}")
    x = np.asarray(x, dtype=float)
    inside = (x > 0.0) & (x < t)
    values = np.where(inside, np.asarray(dist.pdf(np.where(inside, t - x, t))) / F_t, 0.0)
    return _unwrap(values)


def parallel_inactivity_cdf(dist, n, t, x):
    """CDF of (t - X_{n:n} | X_{n:n} < t): 1 - (F(t - x) / F(t))^n for 0 <= x <= t."""
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be an integer >= 1, got {n}")
    log_F_t = dist.log_cdf(t)
    if not math.isfinite(log_F_t):
        raise DomainError(f"inactivity time needs F(t) > 0; t={t}")
    x = np.asarray(x, dtype=float)
    clipped = np.clip(x, 0.0, t)
    with np.errstate(invalid="ignore"):
        ratio = np.exp(n * (np.asarray(dist.log_cdf(t - clipped)) - log_F_t))
    values = np.where(x <= 0.0, 0.0, np.where(x >= t, 1.0, 1.0 - ratio))
    return _unwrap(values)


def load_table(path):
    """Read a tabulated law from a CSV with header ``x,F``."""
    try:
        frame = pd.read_csv(path)
    except OSError as e:
        raise SpecParseError(f"table file '{path}' cannot be read: {e.strerror or e}", token=str(path)) from None
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise SpecParseError(f"table file '{path}' is not a CSV: {e}", token=str(path)) from None
    missing = [column for column in ("x", "F") if column not in frame.columns]
    if missing:
        raise SpecParseError(f"table file '{path}' lacks column(s) {', '.join(missing)}", token=str(path))
    try:
        x = pd.to_numeric(frame["x"]).to_numpy(dtype=float)
        F = pd.to_numeric(frame["F"]).to_numpy(dtype=float)
    except ValueError as e:
        raise SpecParseError(f"table file '{path}': {e}", token=str(path)) from None
    try:
        return Tabulated(x, F, source=Path(path).name)
    except DomainError as e:
        raise SpecParseError(f"table file '{path}': {e}", token=str(path)) from None


def parse_distribution(text):
    """``exp:1``, ``unif:2``, ``power:2``, ``pareto:2,1``, ``weibull2:2,1`` or ``table:<path>``."""
    family, sep, args = text.partition(":")
    if not sep or not args:
        raise SpecParseError(f"distribution '{text}' must look like family:parameters", token=text)
    if family == Family.TABULATED.value:
        return load_table(args)
    if family not in FAMILY_MAPPINGS:
        known = ", ".join([*FAMILY_MAPPINGS, Family.TABULATED.value])
        raise SpecParseError(f"unknown family '{family}' (expected one of {known})", token=family)

    cls = FAMILY_MAPPINGS[family]
    tokens = args.split(",")
    if len(tokens) != len(cls.PARAMETERS):
        raise SpecParseError(
            f"{family} takes {len(cls.PARAMETERS)} parameter(s) ({','.join(cls.PARAMETERS)}), got '{args}'",
            token=args,
        )
    values = []
    for token in tokens:
        try:
            values.append(float(token))
        except ValueError:
            raise SpecParseError(f"parameter '{token}' of '{text}' is not a number", token=token) from None
    try:
        return cls(*values)
    except DomainError as e:
        raise SpecParseError(f"'{text}': {e}", token=args) from None

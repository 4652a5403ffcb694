"""
Measure nodes.

Each node wraps one measure from ``measures`` or ``order_stats`` and returns
a single MeasureValue. The CLI finds them through NODE_CLASS_MAPPINGS and
calls ``getattr(node, node.FUNCTION)`` with the declared inputs.
"""

from . import measures, order_stats
from .distributions import parse_distribution
from .measures import MeasureValue, Method

DISTRIBUTION = ("DISTRIBUTION", {"tooltip": "exp:λ | unif:b | power:α | pareto:θ,x0 | weibull2:α,λ | table:<path>"})
TIME = ("FLOAT", {"default": 1.0, "min": 0.0, "step": 0.01, "tooltip": "Inspection time t"})
SAMPLE_SIZE = ("INT", {"default": 1, "min": 1, "max": 10000, "step": 1, "tooltip": "Sample size n"})
CONTEXT = ("CONTEXT", {"tooltip": "Quadrature settings, closed-form override and worker count"})


class LifetimeDistribution:
    """Parse a distribution spec string."""

    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"spec": ("STRING", {"default": "exp:1"})}}

    RETURN_TYPES = ("DISTRIBUTION",)
    RETURN_NAMES = ("distribution",)
    FUNCTION = "load"
    CATEGORY = "extropy-nodes/distributions"

    def load(self, spec):
        return (parse_distribution(spec),)


class Extropy:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION}, "optional": {"context": CONTEXT}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/extropy"
    DESCRIPTION = "J(X) = -1/2 ∫ f²"

    def compute(self, distribution, context=None):
        return (measures.extropy(distribution, context),)


class ResidualExtropy:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION, "t": TIME}, "optional": {"context": CONTEXT}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/extropy"
    DESCRIPTION = "Extropy of the residual life given survival to t"

    def compute(self, distribution, t, context=None):
        return (measures.residual_extropy(distribution, t, context),)


class PastExtropy:
    """Past extropy J(_tX), the extropy of the inactivity time at t.

    ``form`` picks the representation; all of them agree up to quadrature
    error.
    """

    forms = ["direct", "tau", "quantile", "inactivity"]

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "distribution": DISTRIBUTION,
                "t": TIME,
            },
            "optional": {
                "form": (cls.forms, {"default": "direct"}),
                "context": CONTEXT,
            },
        }

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/past"
    DESCRIPTION = "J(_tX) = -1/(2F²(t)) ∫₀ᵗ f²"

    def _direct(self, distribution, t, context):
        return measures.past_extropy(distribution, t, context)

    def _tau(self, distribution, t, context):
        return measures.past_extropy_via_tau(distribution, t, context)

    def _quantile(self, distribution, t, context):
        return measures.past_extropy_via_quantile(distribution, t, context)

    def _inactivity(self, distribution, t, context):
        return measures.inactivity_extropy(distribution, t, context)

    def compute(self, distribution, t, form="direct", context=None):
        if form not in self.forms:
            raise ValueError(f"unknown form '{form}'")
        return (getattr(self, f"_{form}")(distribution, t, context),)


class PastExtropyViaTau(PastExtropy):
    DESCRIPTION = "J(_tX) through the reversed failure rate: -τ²(t)/(2f²(t)) ∫₀ᵗ f²"

    def compute(self, distribution, t, form="tau", context=None):
        return super().compute(distribution, t, form, context)


class PastExtropyViaQuantile(PastExtropy):
    DESCRIPTION = "J(_tX) in the quantile domain: -1/(2F²(t)) ∫₀^F(t) f(F⁻¹(u)) du"

    def compute(self, distribution, t, form="quantile", context=None):
        return super().compute(distribution, t, form, context)


class PastExtropyDerivative:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION, "t": TIME}, "optional": {"context": CONTEXT}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/past"
    DESCRIPTION = "dJ(_tX)/dt = -2τJ - τ²/2"

    def compute(self, distribution, t, context=None):
        # the method tag follows the J(_tX) the slope is built from
        J = measures.past_extropy(distribution, t, context)
        slope = measures.past_extropy_derivative(distribution, t, context)
        tau = distribution.reversed_failure_rate(t)
        return (MeasureValue(slope, J.method, 2.0 * tau * J.error_estimate),)


class PastExtropyBound:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION, "t": TIME}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/past"
    DESCRIPTION = "-τ(t)/2, a lower bound for J(_tX) while f increases past t"

    def compute(self, distribution, t):
        return (MeasureValue(measures.past_extropy_lower_bound(distribution, t), Method.CLOSED_FORM),)


class ReversedFailureRate:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION, "t": TIME}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/past"
    DESCRIPTION = "τ(t) = f(t)/F(t)"

    def compute(self, distribution, t):
        return (MeasureValue(distribution.reversed_failure_rate(t), Method.CLOSED_FORM),)


class ShannonEntropy:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION}, "optional": {"context": CONTEXT}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/entropy"

    def compute(self, distribution, context=None):
        return (measures.shannon_entropy(distribution, context),)


class ResidualEntropy:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION, "t": TIME}, "optional": {"context": CONTEXT}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/entropy"

    def compute(self, distribution, t, context=None):
        return (measures.residual_entropy(distribution, t, context),)


class PastEntropy:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION, "t": TIME}, "optional": {"context": CONTEXT}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/entropy"

    def compute(self, distribution, t, context=None):
        return (measures.past_entropy(distribution, t, context),)


class PastExtropyMax:
    """Past extropy of the sample maximum X_{n:n}, i.e. of an n-component
    parallel system inspected at t."""

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {"distribution": DISTRIBUTION, "n": SAMPLE_SIZE, "t": TIME},
            "optional": {"context": CONTEXT},
        }

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/order statistics"

    def compute(self, distribution, n, t, context=None):
        return (order_stats.past_extropy_max(distribution, n, t, context),)


class PastExtropyMin:
    """Past extropy of the sample minimum X_{1:n} (series system)."""

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {"distribution": DISTRIBUTION, "n": SAMPLE_SIZE, "t": TIME},
            "optional": {"context": CONTEXT},
        }

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/order statistics"

    def compute(self, distribution, n, t, context=None):
        return (order_stats.past_extropy_min(distribution, n, t, context),)


class ExtropyMax:
    @classmethod
    def INPUT_TYPES(cls):
        return {"required": {"distribution": DISTRIBUTION, "n": SAMPLE_SIZE}, "optional": {"context": CONTEXT}}

    RETURN_TYPES = ("MEASURE",)
    RETURN_NAMES = ("value",)
    FUNCTION = "compute"
    CATEGORY = "extropy-nodes/order statistics"
    DESCRIPTION = "J(X_{n:n}) = -n²/2 ∫ F^(2n-2) f²"

    def compute(self, distribution, n, context=None):
        return (order_stats.extropy_max(distribution, n, context),)


NODE_CLASS_MAPPINGS = {
    "distribution": LifetimeDistribution,
    "extropy": Extropy,
    "residual-extropy": ResidualExtropy,
    "past-extropy": PastExtropy,
    "past-extropy-tau": PastExtropyViaTau,
    "past-extropy-quantile": PastExtropyViaQuantile,
    "past-extropy-derivative": PastExtropyDerivative,
    "past-extropy-bound": PastExtropyBound,
    "shannon-entropy": ShannonEntropy,
    "residual-entropy": ResidualEntropy,
    "past-entropy": PastEntropy,
    "reversed-failure-rate": ReversedFailureRate,
    "past-extropy-max": PastExtropyMax,
    "past-extropy-min": PastExtropyMin,
    "extropy-max": ExtropyMax,
}
NODE_DISPLAY_NAME_MAPPINGS = {
    "distribution": "Lifetime Distribution",
    "extropy": "Extropy",
    "residual-extropy": "Residual Extropy",
    "past-extropy": "Past Extropy",
    "past-extropy-tau": "Past Extropy (Reversed Failure Rate Form)",
    "past-extropy-quantile": "Past Extropy (Quantile Form)",
    "past-extropy-derivative": "Past Extropy Derivative",
    "past-extropy-bound": "Past Extropy Lower Bound",
    "shannon-entropy": "Shannon Entropy",
    "residual-entropy": "Residual Entropy",
    "past-entropy": "Past Entropy",
    "reversed-failure-rate": "Reversed Failure Rate",
    "past-extropy-max": "Past Extropy of the Maximum",
    "past-extropy-min": "Past Extropy of the Minimum",
    "extropy-max": "Extropy of the Maximum",
}

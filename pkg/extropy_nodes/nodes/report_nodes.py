"""
Report nodes: figure datasets, the verification suite, the reconstruction
table and the two-law characterization. Each returns a pandas DataFrame or a
plain dict the CLI can print without further computation.
"""

import logging

import numpy as np
import pandas as pd

from . import measures, order_stats, reconstruction, verification
from .distributions import Weibull2
from .measure_nodes import CONTEXT, DISTRIBUTION
from .settings import CHARACTERIZATION_THRESHOLD, FIGURE_3_RANGE, FIGURE_N_MAX, FIGURE_T, resolve

log = logging.getLogger("extropy-nodes")


class FigureDataset:
    """Datasets behind the three order-statistic and bound plots, all on a
    Weibull law with alpha = 2, lambda = 1:

      1. J(_tX_{n:n}) at t = 0.5 for n = 1..10 (decreasing in n)
      2. J(_tX_{1:n}) at t = 0.5 for n = 1..10 (not monotone)
      3. J(_tX) and -tau(t)/2 over t in [0.05, 1.5]
    """

    figures = ["1", "2", "3"]

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {"which": (cls.figures, {"default": "1"})},
            "optional": {"context": CONTEXT},
        }

    RETURN_TYPES = ("TABLE",)
    RETURN_NAMES = ("table",)
    FUNCTION = "build"
    CATEGORY = "extropy-nodes/reports"

    @staticmethod
    def _law():
        return Weibull2(2.0, 1.0)

    def _sequence(self, which, context):
        grid = order_stats.order_statistic_sequence(self._law(), FIGURE_T, FIGURE_N_MAX, which, context)
        return grid.to_frame()[["n", "value"]]

    def _figure_1(self, context):
        return self._sequence(order_stats.Extreme.MAX, context)

    def _figure_2(self, context):
        return self._sequence(order_stats.Extreme.MIN, context)

    def _figure_3(self, context):
        law = self._law()
        start, stop, count = FIGURE_3_RANGE
        ts = np.linspace(start, stop, count)
        return pd.DataFrame(
            {
                "t": ts,
                "past_extropy": [measures.past_extropy(law, t, context).value for t in ts],
                "neg_half_tau": [measures.past_extropy_lower_bound(law, t) for t in ts],
            }
        )

    def build(self, which, context=None):
        which = str(which)
        if which not in self.figures:
            raise ValueError(f"unknown figure '{which}' (expected one of {', '.join(self.figures)})")
        context = resolve(context)
        return (getattr(self, f"_figure_{which}")(context),)


class VerifyDistributions:
    """Run every identity, bound and order-statistic check; optionally characterize each
    law against a second one."""

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {"distributions": ("DISTRIBUTION_LIST",)},
            "optional": {"against": DISTRIBUTION, "context": CONTEXT},
        }

    RETURN_TYPES = ("REPORT", "BOOLEAN")
    RETURN_NAMES = ("report", "passed")
    FUNCTION = "verify"
    CATEGORY = "extropy-nodes/reports"
    OUTPUT_NODE = True

    def verify(self, distributions, against=None, context=None):
        report = verification.run_checks(distributions, against, context)
        if not report.passed:
            failed = [name for name, check in report.checks.items() if not check.passed]
            log.warning(f"verification failed: {', '.join(failed)}")
        return (report.to_dict(), report.passed)


class ReconstructPastExtropy:
    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "distribution": DISTRIBUTION,
                "t_points": ("FLOAT_LIST", {"tooltip": "Grid of inspection times"}),
            },
            "optional": {"context": CONTEXT},
        }

    RETURN_TYPES = ("TABLE",)
    RETURN_NAMES = ("table",)
    FUNCTION = "reconstruct"
    CATEGORY = "extropy-nodes/reports"
    DESCRIPTION = "Past extropy rebuilt from the reversed failure rate next to the direct value"

    def reconstruct(self, distribution, t_points, context=None):
        grid = reconstruction.reconstruction_table(distribution, t_points, context)
        return (grid.to_frame(columns=("reconstructed", "direct", "abs_diff")),)


class CharacterizeDistributions:
    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "distribution": DISTRIBUTION,
                "other": DISTRIBUTION,
                "n_max": ("INT", {"default": 5, "min": 3, "max": 200, "step": 1}),
                "t_points": ("FLOAT_LIST",),
            },
            "optional": {
                "threshold": ("FLOAT", {"default": CHARACTERIZATION_THRESHOLD, "min": 0.0}),
                "context": CONTEXT,
            },
        }

    RETURN_TYPES = ("REPORT",)
    RETURN_NAMES = ("report",)
    FUNCTION = "characterize"
    CATEGORY = "extropy-nodes/reports"

    def characterize(self, distribution, other, n_max, t_points, threshold=CHARACTERIZATION_THRESHOLD, context=None):
        report = reconstruction.characterize(distribution, other, n_max, t_points, threshold, context)
        return (report.to_dict(),)


NODE_CLASS_MAPPINGS = {
    "figure": FigureDataset,
    "verify": VerifyDistributions,
    "reconstruct": ReconstructPastExtropy,
    "characterize": CharacterizeDistributions,
}
NODE_DISPLAY_NAME_MAPPINGS = {
    "figure": "Figure Dataset",
    "verify": "Verify Identities and Bounds",
    "reconstruct": "Reconstruct Past Extropy",
    "characterize": "Characterize Two Laws",
}

import math

import numpy as np
import pytest

from extropy_nodes.nodes.distributions import Exponential, Pareto, Power, Uniform
from extropy_nodes.nodes.errors import DivergentIntegral, DomainError, ToleranceNotReached
from extropy_nodes.nodes.quadrature import IntegralResult, QuadratureConfig, integrate


class TestIntegrate:
    def test_semi_infinite(self):
        result = integrate(lambda x: np.exp(-2.0 * x), 0.0, math.inf)
        assert isinstance(result, IntegralResult)
        assert result.value == pytest.approx(0.5, rel=1e-10)

    def test_finite(self):
        result = integrate(lambda x: np.exp(-2.0 * x), 0.0, 1.0)
        assert result.value == pytest.approx((1.0 - math.exp(-2.0)) / 2.0, rel=1e-10)
        assert result.value == pytest.approx(0.432332, abs=1e-6)

    def test_integrable_endpoint_singularity(self):
        # x^(-0.8) on (0, 1) integrates to 5
        result = integrate(lambda x: np.power(x, -0.8), 0.0, 1.0)
        assert result.value == pytest.approx(5.0, rel=1e-8)

    def test_divergent(self):
        alpha = 0.4
        with pytest.raises(DivergentIntegral):
            integrate(lambda x: alpha**2 * np.power(x, 2.0 * alpha - 2.0), 0.0, 1.0)

    def test_scalar_integrand_is_broadcast(self):
        assert integrate(lambda x: 3.0, 0.0, 2.0).value == pytest.approx(6.0)

    def test_breakpoints_seed_partition(self):
        kink = lambda x: np.abs(x - 0.3)
        result = integrate(kink, 0.0, 1.0, breakpoints=[0.3, 5.0])
        assert result.value == pytest.approx(0.29, rel=1e-12)
        assert result.subdivisions_used == 0

    def test_budget_exhausted(self):
        cfg = QuadratureConfig(rel_tol=1e-14, abs_tol=1e-15, max_subdivisions=3)
        with pytest.raises(ToleranceNotReached) as info:
            integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0, cfg)
        assert info.value.result.subdivisions_used == 3
        assert info.value.exit_code == 4

    def test_subdivisions_within_budget(self):
        cfg = QuadratureConfig(max_subdivisions=50)
        result = integrate(lambda x: np.sqrt(x), 0.0, 1.0, cfg)
        assert result.subdivisions_used <= 50
        assert result.error_estimate >= 0.0

    @pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 1.0), (-math.inf, 0.0), (math.nan, 1.0)])
    def test_bad_limits(self, a, b):
        with pytest.raises(DomainError):
            integrate(lambda x: x, a, b)

    def test_non_finite_integrand(self):
        with pytest.raises(DivergentIntegral):
            integrate(lambda x: np.full_like(x, np.nan), 0.0, 1.0)


class TestProperties:
    def test_linearity(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            c = rng.uniform(-10.0, 10.0)
            k = rng.uniform(0.5, 3.0)
            f = lambda x, k=k: np.exp(-k * x) * np.cos(x)
            base = integrate(f, 0.0, math.inf).value
            scaled = integrate(lambda x, f=f, c=c: c * f(x), 0.0, math.inf).value
            assert scaled == pytest.approx(c * base, rel=1e-9, abs=1e-12)

    def test_interval_additivity(self):
        f = lambda x: x**2 * np.exp(-x)
        whole = integrate(f, 0.0, math.inf).value
        split = integrate(f, 0.0, 1.7).value + integrate(f, 1.7, math.inf).value
        assert whole == pytest.approx(2.0, rel=1e-10)
        assert split == pytest.approx(whole, rel=1e-9)

    @pytest.mark.parametrize(
        "dist, expected",
        [
            (Exponential(1.5), 1.5 / 2.0),
            (Uniform(2.0), 1.0 / 2.0),
            (Power(2.0), 4.0 / 3.0),
            (Power(0.75), 0.75**2 / 0.5),
            (Pareto(2.0, 1.0), 4.0 / 5.0),
        ],
    )
    def test_squared_density_against_closed_forms(self, dist, expected):
        result = integrate(
            lambda x: np.square(dist.pdf(x)),
            dist.support.lower,
            dist.support.upper,
            breakpoints=dist.breakpoints(dist.support.lower, dist.support.upper),
        )
        assert result.value == pytest.approx(expected, rel=1e-9)


class TestQuadratureConfig:
    def test_defaults(self):
        cfg = QuadratureConfig()
        assert (cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions) == (1e-10, 1e-12, 2000)

    @pytest.mark.parametrize(
        "kwargs",
        [{"rel_tol": 0.0}, {"abs_tol": -1.0}, {"max_subdivisions": 0}, {"max_subdivisions": 2.5}],
    )
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureConfig(**kwargs)

    def test_input_types_publish_cli_flags(self):
        optional = QuadratureConfig.INPUT_TYPES()["optional"]
        flags = {name: spec[1]["flag"] for name, spec in optional.items()}
        assert flags == {
            "rel_tol": "--quad-rel-tol",
            "abs_tol": "--quad-abs-tol",
            "max_subdivisions": "--max-subdiv",
        }
        defaults = QuadratureConfig()
        for name, (_, options) in optional.items():
            assert options["default"] == getattr(defaults, name)

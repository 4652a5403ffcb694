import math

import numpy as np
import pytest

from extropy_nodes.nodes.distributions import (
    Exponential,
    Pareto,
    Power,
    Tabulated,
    Uniform,
    Weibull2,
    inactivity_density,
    load_table,
    parallel_inactivity_cdf,
    parse_distribution,
)
from extropy_nodes.nodes.errors import DivergentIntegral, DomainError, SpecParseError
from extropy_nodes.nodes.quadrature import integrate


def _random_catalog(rng, draws):
    for _ in range(draws):
        yield Exponential(rng.uniform(0.1, 5.0))
        yield Uniform(rng.uniform(0.1, 5.0))
        yield Power(rng.uniform(0.6, 5.0))
        yield Pareto(rng.uniform(1.0, 5.0), rng.uniform(0.1, 3.0))
        yield Weibull2(rng.uniform(0.6, 4.0), rng.uniform(0.2, 3.0))


class TestPdf:
    def test_exponential_at_zero(self, exp1):
        assert exp1.pdf(0.0) == pytest.approx(1.0)

    def test_power_is_linear(self, power2):
        assert power2.pdf(0.5) == pytest.approx(1.0)

    def test_weibull_peaks_at_mode(self, weibull21):
        mode = weibull21.density_mode()
        assert mode == pytest.approx(math.sqrt(2.0) / 2.0)
        assert weibull21.pdf(mode) > weibull21.pdf(mode - 1e-3)
        assert weibull21.pdf(mode) > weibull21.pdf(mode + 1e-3)

    def test_zero_outside_support(self, unif2, pareto21):
        assert unif2.pdf(-0.1) == 0.0
        assert unif2.pdf(2.5) == 0.0
        assert pareto21.pdf(0.5) == 0.0

    def test_vectorised(self, exp1):
        x = np.array([0.0, 1.0, 2.0])
        np.testing.assert_allclose(exp1.pdf(x), np.exp(-x))


class TestCdf:
    def test_uniform(self, unif2):
        assert unif2.cdf(1.0) == pytest.approx(0.5)

    def test_pareto(self):
        assert Pareto(1.0, 1.0).cdf(2.0) == pytest.approx(0.5)

    def test_weibull(self, weibull21):
        assert weibull21.cdf(0.5) == pytest.approx(1.0 - math.exp(-0.25))
        assert weibull21.cdf(0.5) == pytest.approx(0.221199, abs=1e-6)

    def test_clamped(self, unif2, pareto21):
        assert unif2.cdf(-1.0) == 0.0
        assert unif2.cdf(3.0) == 1.0
        assert pareto21.cdf(1.0) == 0.0

    def test_survival_is_complement(self, catalog):
        for dist in catalog:
            x = dist.quantile(np.linspace(0.05, 0.95, 7))
            np.testing.assert_allclose(dist.survival(x), 1.0 - dist.cdf(x), atol=1e-14)


class TestQuantile:
    def test_exponential(self, exp1):
        assert exp1.quantile(1.0 - math.exp(-1.0)) == pytest.approx(1.0)

    def test_power(self, power2):
        assert power2.quantile(0.25) == pytest.approx(0.5)

    @pytest.mark.parametrize("u", [0.0, 1.0, -0.2, 1.5])
    def test_outside_unit_interval(self, exp1, u):
        with pytest.raises(DomainError):
            exp1.quantile(u)

    def test_tabulated_matches_analytic(self, exp_table_csv, exp1):
        table = load_table(exp_table_csv)
        u = np.linspace(0.01, 0.99, 25)
        np.testing.assert_allclose(table.quantile(u), exp1.quantile(u), atol=1e-4)


class TestReversedFailureRate:
    def test_exponential(self):
        lam, t = 2.0, 0.7
        expected = lam * math.exp(-lam * t) / (1.0 - math.exp(-lam * t))
        assert Exponential(lam).reversed_failure_rate(t) == pytest.approx(expected)

    def test_uniform(self):
        assert Uniform(1.0).reversed_failure_rate(0.3) == pytest.approx(1.0 / 0.3)

    def test_power(self, power2):
        assert power2.reversed_failure_rate(0.5) == pytest.approx(4.0)

    @pytest.mark.parametrize("level", [0.05, 0.3, 0.6, 0.95])
    def test_times_cdf_is_pdf(self, catalog, level):
        for dist in catalog:
            t = float(dist.quantile(level))
            assert dist.reversed_failure_rate(t) * dist.cdf(t) == pytest.approx(dist.pdf(t), rel=1e-10), dist

    def test_below_support(self, exp1, pareto21):
        with pytest.raises(DomainError):
            exp1.reversed_failure_rate(0.0)
        with pytest.raises(DomainError):
            pareto21.reversed_failure_rate(0.9)


class TestCatalogProperties:
    def test_random_parameter_draws(self):
        rng = np.random.default_rng(20240611)
        for dist in _random_catalog(rng, 100):
            grid = np.linspace(dist.support.lower, dist.quantile(0.999), 1000)
            assert np.all(np.diff(dist.cdf(grid)) >= 0.0), dist

            total = integrate(dist.pdf, dist.support.lower, dist.support.upper).value
            assert total == pytest.approx(1.0, abs=1e-8), dist

            x = dist.quantile(np.linspace(0.05, 0.95, 19))
            np.testing.assert_allclose(dist.quantile(dist.cdf(x)), x, rtol=1e-8, atol=1e-10, err_msg=repr(dist))

    @pytest.mark.parametrize(
        "cls, args",
        [
            (Exponential, (0.0,)),
            (Uniform, (-1.0,)),
            (Power, (0.0,)),
            (Pareto, (1.0, 0.0)),
            (Weibull2, (2.0, -1.0)),
            (Exponential, (math.inf,)),
        ],
    )
    def test_invalid_parameters(self, cls, args):
        with pytest.raises(DomainError):
            cls(*args)

    @pytest.mark.parametrize("dist", [Power(0.5), Power(0.3), Weibull2(0.4, 1.0)])
    def test_square_integrability(self, dist):
        with pytest.raises(DivergentIntegral):
            dist.require_square_integrable()

    @pytest.mark.parametrize(
        "dist, n, lower",
        [(Power(0.4), 1, 0.5), (Power(0.4), 2, None), (Weibull2(0.4, 1.0), 1, 1.0), (Weibull2(0.3, 1.0), 2, None)],
    )
    def test_square_integrable_away_from_origin_or_for_larger_samples(self, dist, n, lower):
        dist.require_square_integrable(n=n, lower=lower)

    def test_pareto_past_extropy_at_huge_t(self, pareto21):
        assert pareto21.closed_past_extropy(1e100) == pytest.approx(pareto21.closed_extropy(), rel=1e-12)
        assert pareto21.closed_past_extropy(1e300) == pytest.approx(-0.4, rel=1e-12)

    def test_density_modes(self, exp1, unif2, pareto21):
        assert exp1.density_mode() == 0.0
        assert unif2.density_mode() == 2.0
        assert pareto21.density_mode() == 1.0
        assert Power(0.7).density_mode() == 0.0
        assert Power(3.0).density_mode() == 1.0
        assert Weibull2(1.0, 2.0).density_mode() == 0.0


class TestTabulated:
    def test_pdf_and_cdf_follow_exponential(self, exp_table_csv, exp1):
        table = load_table(exp_table_csv)
        x = np.linspace(0.05, 8.0, 40)
        np.testing.assert_allclose(table.cdf(x), exp1.cdf(x), atol=1e-7)
        np.testing.assert_allclose(table.pdf(x), exp1.pdf(x), rtol=1e-4)

    def test_pdf_sup_norm(self, exp_table_csv, exp1):
        table = load_table(exp_table_csv)
        x = np.linspace(0.01, 5.0, 2000)
        assert np.max(np.abs(table.pdf(x) - exp1.pdf(x))) <= 1e-3

    def test_label_uses_file_name(self, exp_table_csv):
        assert load_table(exp_table_csv).label == "table:exp1.csv"

    @pytest.mark.parametrize(
        "x, F",
        [
            ([0.0, 1.0, 1.0], [0.0, 0.5, 1.0]),
            ([0.0, 1.0, 2.0], [0.0, 0.6, 0.5]),
            ([0.0, 1.0, 2.0], [0.1, 0.5, 1.0]),
            ([0.0, 1.0, 2.0], [0.0, 0.5, 0.9]),
            ([0.0], [0.0]),
        ],
    )
    def test_rejects_bad_grids(self, x, F):
        with pytest.raises(DomainError):
            Tabulated(x, F)

    def test_missing_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,G\n0,0\n1,1\n")
        with pytest.raises(SpecParseError):
            load_table(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecParseError) as info:
            load_table(tmp_path / "nope.csv")
        assert info.value.token.endswith("nope.csv")


class TestParseDistribution:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("exp:1", Exponential(1.0)),
            ("unif:2", Uniform(2.0)),
            ("power:2", Power(2.0)),
            ("pareto:2,1", Pareto(2.0, 1.0)),
            ("weibull2:2,1", Weibull2(2.0, 1.0)),
        ],
    )
    def test_catalog(self, text, expected):
        assert parse_distribution(text) == expected

    def test_table(self, exp_table_csv):
        assert isinstance(parse_distribution(f"table:{exp_table_csv}"), Tabulated)

    @pytest.mark.parametrize(
        "text, token",
        [
            ("gamma:1", "gamma"),
            ("exp", "exp"),
            ("exp:abc", "abc"),
            ("pareto:1", "1"),
            ("weibull2:2,x", "x"),
            ("exp:-1", "-1"),
        ],
    )
    def test_errors_name_the_token(self, text, token):
        with pytest.raises(SpecParseError) as info:
            parse_distribution(text)
        assert info.value.token == token
        assert info.value.exit_code == 2


class TestInactivity:
    def test_uniform_density(self):
        assert inactivity_density(Uniform(1.0), 0.5, 0.2) == pytest.approx(2.0)
        assert inactivity_density(Uniform(1.0), 0.5, 0.7) == 0.0

    def test_normalised(self, catalog):
        for dist in catalog:
            t = dist.quantile(0.6)
            a = max(0.0, t - dist.support.upper)
            kinks = [t - p for p in dist.breakpoints(dist.support.lower, t)]
            total = integrate(lambda x: inactivity_density(dist, t, x), a, t - dist.support.lower, breakpoints=kinks)
            assert total.value == pytest.approx(1.0, abs=1e-9), dist

    def test_parallel_cdf(self, weibull21):
        t = 0.5
        assert parallel_inactivity_cdf(weibull21, 3, t, 0.0) == 0.0
        assert parallel_inactivity_cdf(weibull21, 3, t, t) == 1.0
        x = 0.2
        expected = 1.0 - (weibull21.cdf(t - x) / weibull21.cdf(t)) ** 3
        assert parallel_inactivity_cdf(weibull21, 3, t, x) == pytest.approx(expected)

    def test_parallel_cdf_needs_sample(self, exp1):
        with pytest.raises(DomainError):
            parallel_inactivity_cdf(exp1, 0, 1.0, 0.5)

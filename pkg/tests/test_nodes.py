import pandas as pd
import pytest

from extropy_nodes import NODE_CLASS_MAPPINGS, NODE_DISPLAY_NAME_MAPPINGS
from extropy_nodes.nodes.distributions import Exponential
from extropy_nodes.nodes.measures import MeasureValue, Method


def _call(name, **inputs):
    node = NODE_CLASS_MAPPINGS[name]()
    return getattr(node, node.FUNCTION)(**inputs)


class TestRegistry:
    def test_every_node_has_a_display_name(self):
        assert set(NODE_CLASS_MAPPINGS) == set(NODE_DISPLAY_NAME_MAPPINGS)

    @pytest.mark.parametrize("name", sorted(NODE_CLASS_MAPPINGS))
    def test_node_contract(self, name):
        cls = NODE_CLASS_MAPPINGS[name]
        declared = cls.INPUT_TYPES()
        assert "required" in declared
        assert len(cls.RETURN_TYPES) == len(cls.RETURN_NAMES)
        assert callable(getattr(cls(), cls.FUNCTION))
        assert cls.CATEGORY.startswith("extropy-nodes/")

    def test_measures_return_one_value(self, weibull21):
        for name, cls in NODE_CLASS_MAPPINGS.items():
            if cls.RETURN_TYPES != ("MEASURE",):
                continue
            required = cls.INPUT_TYPES()["required"]
            inputs = {"distribution": weibull21, "t": 0.5, "n": 3}
            (result,) = _call(name, **{k: inputs[k] for k in required})
            assert isinstance(result, MeasureValue), name


class TestMeasureNodes:
    def test_distribution_node(self):
        assert _call("distribution", spec="exp:1") == (Exponential(1.0),)

    @pytest.mark.parametrize("form", ["direct", "tau", "quantile", "inactivity"])
    def test_past_extropy_forms(self, exp1, form):
        (result,) = _call("past-extropy", distribution=exp1, t=1.0, form=form)
        assert result.value == pytest.approx(-0.540988, abs=1e-6)

    def test_unknown_form(self, exp1):
        with pytest.raises(ValueError):
            _call("past-extropy", distribution=exp1, t=1.0, form="laplace")

    def test_form_defaults(self, power2):
        (via_tau,) = _call("past-extropy-tau", distribution=power2, t=0.5)
        (via_quantile,) = _call("past-extropy-quantile", distribution=power2, t=0.5)
        assert via_tau.value == pytest.approx(-4.0 / 3.0)
        assert via_quantile.value == pytest.approx(-4.0 / 3.0)
        assert via_quantile.method is Method.QUADRATURE

    def test_derivative(self, unif2):
        (slope,) = _call("past-extropy-derivative", distribution=unif2, t=1.0)
        assert slope.value == pytest.approx(0.5)
        assert slope.method is Method.CLOSED_FORM

    def test_bound_and_rate(self, power2):
        (bound,) = _call("past-extropy-bound", distribution=power2, t=0.5)
        (tau,) = _call("reversed-failure-rate", distribution=power2, t=0.5)
        assert tau.value == pytest.approx(4.0)
        assert bound.value == pytest.approx(-2.0)


class TestReportNodes:
    def test_unknown_figure(self):
        with pytest.raises(ValueError):
            _call("figure", which="7")

    def test_figure_is_a_frame(self):
        (frame,) = _call("figure", which=1)
        assert isinstance(frame, pd.DataFrame)
        assert len(frame) == 10

    def test_verify_single_law(self, exp1):
        report, passed = _call("verify", distributions=[exp1])
        assert passed is True
        assert report["max_decreasing_in_n"]["witnesses"][0]["skipped"]

    def test_characterize(self, exp1):
        (report,) = _call("characterize", distribution=exp1, other=Exponential(2.0), n_max=3, t_points=[1.0])
        assert report["verdict"] == "Distinct"

    def test_reconstruct(self, unif2):
        (frame,) = _call("reconstruct", distribution=unif2, t_points=[0.5, 1.0, 1.5])
        assert list(frame.columns) == ["t", "reconstructed", "direct", "abs_diff"]
        assert frame["abs_diff"].max() <= 1e-6

import numpy as np
import pandas as pd
import pytest

from extropy_nodes.nodes.distributions import Exponential, Pareto, Power, Uniform, Weibull2
from extropy_nodes.nodes.quadrature import QuadratureConfig
from extropy_nodes.nodes.settings import EvaluationContext


@pytest.fixture
def exp1():
    return Exponential(1.0)


@pytest.fixture
def unif2():
    return Uniform(2.0)


@pytest.fixture
def power2():
    return Power(2.0)


@pytest.fixture
def pareto21():
    return Pareto(2.0, 1.0)


@pytest.fixture
def weibull21():
    return Weibull2(2.0, 1.0)


@pytest.fixture
def catalog(exp1, unif2, power2, pareto21, weibull21):
    return [exp1, unif2, power2, pareto21, weibull21]


@pytest.fixture
def quadrature_only():
    return EvaluationContext(QuadratureConfig(), force_quadrature=True)


@pytest.fixture
def exp_table_csv(tmp_path):
    """Exponential(1) tabulated on 2001 points of [0, 20]."""
    x = np.linspace(0.0, 20.0, 2001)
    path = tmp_path / "exp1.csv"
    pd.DataFrame({"x": x, "F": -np.expm1(-x)}).to_csv(path, index=False)
    return path

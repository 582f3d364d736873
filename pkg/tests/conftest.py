import numpy as np
import pytest

from ringsqueeze import CavityParams, run_squeezing


@pytest.fixture(scope="session")
def params():
    """Over-coupled defaults: gamma = 1, gamma_i = gamma/8, gamma_p = 2."""
    return CavityParams(gamma_i=0.125, gamma_c=0.875, gamma_p=2.0,
                        gamma_pc=2.0, kappa=1.0)


@pytest.fixture(scope="session")
def default_run(params):
    """Near-threshold run at the figure defaults, sized for fast tests."""
    return run_squeezing(params, delta=4.0, power_fraction=0.99, n_points=192)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)

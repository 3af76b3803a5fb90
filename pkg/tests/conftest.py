import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ionvit.model import Case, ModelParams

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20241019)


@pytest.fixture
def fig1a():
    return ModelParams(Case.RED, g_a=10.0, g_b=10.0, gamma_a=3.0, gamma_b=3.0)


@pytest.fixture
def fig4a():
    return ModelParams(Case.RED, g_a=10.0, g_b=10.0, gamma_a=5.0, gamma_b=5.0)


def random_params(rng, case, stable_margin=None, n_range=(0.0, 0.0)):
    """Log-uniform couplings and decays in [0.1, 50] kappa.

    For the blue case, draws are rejected until
    ``kappa - g_a^2/gamma_a - g_b^2/gamma_b > stable_margin``.
    """
    while True:
        g_a, g_b, y_a, y_b = np.exp(rng.uniform(np.log(0.1), np.log(50.0), 4))
        n_vib, n_eg = rng.uniform(*n_range, 2)
        p = ModelParams(case, g_a=g_a, g_b=g_b, gamma_a=y_a, gamma_b=y_b,
                        n_vib=n_vib, n_eg=n_eg)
        if case == Case.RED or stable_margin is None:
            return p
        if p.kappa - g_a**2 / y_a - g_b**2 / y_b > stable_margin:
            return p

import pytest
from hypothesis import HealthCheck, settings

from cmeds.curve import INFINITY, WeierstrassCurve

settings.register_profile(
    "repo",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def example():
    """y^2 = x^3 - 11x + 890 with P = (-1, 30) and Q = (7, 34) of order 4."""
    E = WeierstrassCurve.from_coefficients([0, 0, 0, -11, 890])
    return E, E.point(-1, 30), E.point(7, 34)


@pytest.fixture(scope="session")
def cm_curve():
    """y^2 = x^3 - 2x over Q(i) with P = (-1, 1) and Q = O."""
    E = WeierstrassCurve.from_coefficients([0, 0, 0, -2, 0], "Qi", cm=True)
    return E, E.point(-1, 1), INFINITY

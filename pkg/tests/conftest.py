from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rational_point():
    from ordinarycircles.geometry import Point

    def make(x, y, tag=None):
        return Point.rational(Fraction(x), Fraction(y), tag)

    return make

import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from qsl2r.qspecial import QParams

settings.register_profile("default", deadline=None, max_examples=40, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def p():
    return QParams(0.5, Fraction(3, 10))

from fractions import Fraction

import pytest
from hypothesis import settings

from zdense.certify import STAGE_INTEGRAL, STAGE_RATIONAL, base_representation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def rational_base():
    return {n: base_representation(n, STAGE_RATIONAL).orbifold for n in (3, 5, 7)}


@pytest.fixture(scope="session")
def integral_base():
    return {n: base_representation(n, STAGE_INTEGRAL).orbifold for n in (3, 5, 7)}


F = Fraction

import warnings

import pytest

from otlab.errors import MaybeNonMaximal
from otlab.geometry import classify
from otlab.number_field import analyze_polynomial
from otlab.units import search_units, totally_positive

CUBIC = (-1, -1, 0, 1)  # x^3 - x - 1, signature (1, 1)
QUARTIC = (-1, -1, 0, 0, 1)  # x^4 - x - 1, signature (2, 1)
QUINTIC = (-1, -1, 0, 0, 0, 1)  # x^5 - x - 1, signature (1, 2)
SQRT2 = (-2, 0, 1)

CUBIC_ROOT = 1.3247179572447458  # plastic number, by bisection in the density oracle


def _quiet(coeffs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MaybeNonMaximal)
        return analyze_polynomial(coeffs)


@pytest.fixture(scope="session")
def cubic():
    return _quiet(CUBIC)


@pytest.fixture(scope="session")
def quartic():
    return _quiet(QUARTIC)


@pytest.fixture(scope="session")
def quintic():
    return _quiet(QUINTIC)


@pytest.fixture(scope="session")
def sqrt2():
    return _quiet(SQRT2)


@pytest.fixture(scope="session")
def cubic_ot(cubic):
    units = totally_positive(search_units(cubic, 3), cubic)
    return classify(cubic).with_units(units)


@pytest.fixture(scope="session")
def quartic_ot(quartic):
    units = totally_positive(search_units(quartic, 2), quartic)
    return classify(quartic).with_units(units)

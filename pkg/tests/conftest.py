"""Shared fixtures.

The corpus builds validate every axiom on construction, and the field-tower
examples certify their Galois data on load, so the larger ones are worth
building once per session rather than once per test.
"""

import pytest

from groupoidrings import build_example


@pytest.fixture(scope="session")
def matrix3():
    return build_example("matrix-3")


@pytest.fixture(scope="session")
def quaternion():
    return build_example("quaternion")


@pytest.fixture(scope="session")
def ff22():
    return build_example("ff-skew-2-2")


@pytest.fixture(scope="session")
def cbrt2():
    return build_example("cbrt2")


@pytest.fixture(scope="session")
def klein_galois():
    return build_example("klein-galois")

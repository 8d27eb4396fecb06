from fractions import Fraction

import pytest

from tiltwalls import P3, Q3, StabilityPoint, canonical_collection, ext_shift


@pytest.fixture(scope="session")
def p3_collection():
    return canonical_collection(P3)


@pytest.fixture(scope="session")
def p3_ext(p3_collection):
    return ext_shift(p3_collection)


@pytest.fixture(scope="session")
def q3_collection():
    return canonical_collection(Q3)


@pytest.fixture(scope="session")
def q3_ext(q3_collection):
    return ext_shift(q3_collection)


@pytest.fixture(scope="session")
def region_sample():
    """A rational point inside the quiver region of the canonical p3 collection."""
    return StabilityPoint.of(Fraction(-1, 2), Fraction(1, 4))


@pytest.fixture(scope="session")
def outside_sample():
    """High in the plane (alpha = 3): outside every shipped quiver region."""
    return StabilityPoint.of(0, 9)

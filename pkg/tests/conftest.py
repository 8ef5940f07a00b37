import pytest
from hypothesis import HealthCheck, settings

from charcod.zoo import (
    alternating,
    cyclic,
    dihedral,
    elementary_abelian,
    quaternion8,
    semidirect_cyclic,
    symmetric,
)

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def S3():
    return symmetric(3)


@pytest.fixture(scope="session")
def S4():
    return symmetric(4)


@pytest.fixture(scope="session")
def A4():
    return alternating(4)


@pytest.fixture(scope="session")
def A5():
    return alternating(5)


@pytest.fixture(scope="session")
def Q8():
    return quaternion8()


@pytest.fixture(scope="session")
def F21():
    return semidirect_cyclic(3, 7, 2)


@pytest.fixture(scope="session")
def F546():
    return semidirect_cyclic(6, 91, 17)


def small_groups():
    """A spread of small groups used by several oracle tests."""
    return [
        ("C1", cyclic(1)),
        ("C6", cyclic(6)),
        ("E2_3", elementary_abelian(2, 3)),
        ("D8", dihedral(4)),
        ("D10", dihedral(5)),
        ("Q8", quaternion8()),
        ("S3", symmetric(3)),
        ("A4", alternating(4)),
        ("S4", symmetric(4)),
        ("F21", semidirect_cyclic(3, 7, 2)),
        ("F20", semidirect_cyclic(4, 5, 2)),
    ]

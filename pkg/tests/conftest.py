import pytest

from cubecover.scalar import FieldKind


@pytest.fixture
def f7():
    return FieldKind.prime(10007)


@pytest.fixture
def qq():
    return FieldKind.rational()

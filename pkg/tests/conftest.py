import pytest

from jetalg import gen_integration_zinbiel, gen_truncated_poly_example


@pytest.fixture(scope="session")
def poly3():
    return gen_truncated_poly_example(2, 3, 3, 3)


@pytest.fixture(scope="session")
def poly2():
    return gen_truncated_poly_example(2, 3, 2, 3)


@pytest.fixture(scope="session")
def zin2():
    return gen_integration_zinbiel(2, 3)

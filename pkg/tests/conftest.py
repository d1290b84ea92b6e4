import pytest

from euclidmin import make_field, make_sconfig


@pytest.fixture(scope="session")
def field_q():
    return make_field([-1, 1])


@pytest.fixture(scope="session")
def field_qi():
    return make_field([1, 0, 1])


@pytest.fixture(scope="session")
def field_sqrt2():
    return make_field([-2, 0, 1])


@pytest.fixture(scope="session")
def field_sqrtm5():
    return make_field([5, 0, 1])


@pytest.fixture(scope="session")
def s_q_inf(field_q):
    return make_sconfig(field_q, [])


@pytest.fixture(scope="session")
def s_q_2(field_q):
    return make_sconfig(field_q, [2])


@pytest.fixture(scope="session")
def s_q_23(field_q):
    return make_sconfig(field_q, [2, 3])


@pytest.fixture(scope="session")
def s_qi_inf(field_qi):
    return make_sconfig(field_qi, [])


@pytest.fixture(scope="session")
def s_sqrt2_inf(field_sqrt2):
    return make_sconfig(field_sqrt2, [])


@pytest.fixture(scope="session")
def s_sqrtm5_inf(field_sqrtm5):
    return make_sconfig(field_sqrtm5, [])

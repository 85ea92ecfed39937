import pytest

import src.database as database
from src.field import field_new
from src.group import PGL, PSL, build_group
from src.utils import prime_power


def psl(q: int):
    return build_group(field_new(*prime_power(q)), PSL)


def pgl(q: int):
    return build_group(field_new(*prime_power(q)), PGL)


@pytest.fixture(scope="session")
def psl5():
    return psl(5)


@pytest.fixture(scope="session")
def psl7():
    return psl(7)


@pytest.fixture(scope="session")
def psl9():
    return psl(9)


@pytest.fixture(scope="session")
def psl11():
    return psl(11)


@pytest.fixture(scope="session")
def psl13():
    return psl(13)


@pytest.fixture(scope="session")
def psl19():
    return psl(19)


@pytest.fixture(scope="session")
def psl25():
    return psl(25)


@pytest.fixture
def temp_db(tmp_path):
    """Points the session factory at a throwaway SQLite file."""
    original = database.engine
    database.configure(f"sqlite:///{tmp_path / 'test.db'}")
    database.init_db()
    yield database
    database.engine = original
    database.SessionLocal.configure(bind=original)

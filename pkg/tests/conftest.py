import pytest

from matroidc.enumerate import EnumeratorSource


@pytest.fixture(scope="session")
def source():
    return EnumeratorSource(7)

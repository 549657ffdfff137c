import pytest
from mpmath import mp


@pytest.fixture(autouse=True)
def working_precision():
    old = mp.prec
    mp.prec = 128
    yield
    mp.prec = old

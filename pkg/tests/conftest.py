import random

import pytest

from quatpairs.exact_algebra import PrimeField, Rationals


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def Q():
    return Rationals()


@pytest.fixture
def F3():
    return PrimeField(3)


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F7():
    return PrimeField(7)

"""Shared fixtures: families and precision targets used across the suite."""

from fractions import Fraction

import pytest

from cubicthue import example_family

P20 = Fraction(1, 10**20)
P25 = Fraction(1, 10**25)
P30 = Fraction(1, 10**30)


@pytest.fixture(scope="session")
def fam1():
    return example_family(1)


@pytest.fixture(scope="session")
def fam2():
    return example_family(2)


@pytest.fixture(scope="session")
def fam3():
    return example_family(3)

"""Shared fixtures: the small systems most test files touch.

The system factory memoizes per spelling, so these are cheap aliases;
fixtures exist to keep parametrized tests readable.
"""

import pytest

from tnnmorse import coxeter_system


@pytest.fixture(scope="session")
def a1():
    return coxeter_system("A1")


@pytest.fixture(scope="session")
def a2():
    return coxeter_system("A2")


@pytest.fixture(scope="session")
def a3():
    return coxeter_system("A3")


@pytest.fixture(scope="session")
def b2():
    return coxeter_system("B2")


@pytest.fixture(scope="session")
def b3():
    return coxeter_system("B3")


@pytest.fixture(scope="session")
def g2():
    return coxeter_system("G2")

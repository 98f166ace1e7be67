"""Shared fixtures: field contexts and parameter sets reused across the suite."""

import pytest

from kasamilab import build_field, derive_params


@pytest.fixture(scope="session")
def ctx4():
    return build_field(4)


@pytest.fixture(scope="session")
def ctx6():
    return build_field(6)


@pytest.fixture(scope="session")
def ctx8():
    return build_field(8)


@pytest.fixture(scope="session")
def p41():
    return derive_params(4, 1)


@pytest.fixture(scope="session")
def p61():
    return derive_params(6, 1)


@pytest.fixture(scope="session")
def p62():
    return derive_params(6, 2)


@pytest.fixture(scope="session")
def p82():
    return derive_params(8, 2)

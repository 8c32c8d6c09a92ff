import pytest

from tests.paths import BELL, FIG1


@pytest.fixture
def fig1_source():
    return FIG1.read_text()


@pytest.fixture
def bell_source():
    return BELL.read_text()

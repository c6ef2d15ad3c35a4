import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from hnnkit import preset  # noqa: E402

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def bs12():
    return preset("bs12")


@pytest.fixture(scope="session")
def bs23():
    return preset("bs23")


@pytest.fixture(scope="session")
def grig():
    return preset("grigorchuk")

"""
Pytest configuration and fixtures for the ihull workbench tests.
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from ihull_config import Settings  # noqa: E402
from ihull_fixtures import FIXTURES, load_fixture  # noqa: E402

DATA_DIR = ROOT / "data"


@pytest.fixture
def fixture_a():
    """{0, 1, a, aa} with a^3 = 0."""
    return load_fixture("A")


@pytest.fixture
def fixture_b():
    """{0, e, s} with se = s."""
    return load_fixture("B")


@pytest.fixture
def language():
    """Language semigroup of {a, b, aa, ba}."""
    return load_fixture("LANGUAGE")


@pytest.fixture
def words2():
    """All words of length at most two over {a, b, c}."""
    return load_fixture("WORDS2")


@pytest.fixture
def cat2():
    """Semigroupoid with a basis but no lcm for (s, t)."""
    return load_fixture("CAT2")


@pytest.fixture
def path_uvw():
    """Free category on u -e,f-> v -g-> w."""
    return load_fixture("PATH")


@pytest.fixture
def g0():
    """Z/2 with a zero adjoined."""
    return load_fixture("G0_Z2")


@pytest.fixture
def settings():
    """Default settings, independent of config/ihull.yaml."""
    return Settings()


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture(params=sorted(FIXTURES))
def any_fixture(request):
    """Every built-in fixture in turn."""
    return load_fixture(request.param)

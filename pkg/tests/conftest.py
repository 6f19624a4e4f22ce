import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import ringspace as rs


@pytest.fixture(scope="session")
def dom():
    """The workhorse domain: r = 0.5, base point 0.7."""
    return rs.make_annulus(0.5, 0.7)


@pytest.fixture(scope="session")
def dom06():
    """Divisor-probe domain: r = 0.5, base point 0.6."""
    return rs.make_annulus(0.5, 0.6)

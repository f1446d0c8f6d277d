import pytest

from common import DEFAULTS

from edgemarket import MarketParams


@pytest.fixture
def defaults() -> MarketParams:
    """Baseline market constants used throughout the experiments."""
    return DEFAULTS

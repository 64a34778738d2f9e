"""Shared pytest fixtures."""

import pytest

from src.config import load_config


@pytest.fixture(autouse=True)
def fresh_config():
    """Re-read the environment for every test."""
    load_config.cache_clear()
    yield
    load_config.cache_clear()

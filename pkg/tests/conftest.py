"""conftest.py"""
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))), "src"))

from modules import config  # noqa: E402


@pytest.fixture(autouse=True)
def config_dir(tmp_path, monkeypatch):
    """Every test gets its own config.ini with the default settings."""
    monkeypatch.setenv("OPTOBESSEL_CONFIG_DIR", str(tmp_path / "config"))
    yield tmp_path / "config"
    config.clear_overrides()

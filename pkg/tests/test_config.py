"""
Tests for workbench settings
"""

import pytest
from pydantic import ValidationError

from tgwa.core.config import Settings


def test_defaults(monkeypatch):
    for name in ("DEFAULT_WINDOW", "DEFAULT_BOUND", "DEFAULT_FORMAT", "CHARACTERISTIC"):
        monkeypatch.delenv(name, raising=False)
    settings = Settings(_env_file=None)
    assert settings.DEFAULT_WINDOW == 64
    assert settings.DEFAULT_BOUND == 16
    assert settings.DEFAULT_FORMAT == "text"
    assert settings.LIBRARY_PATH.endswith("library.yaml")


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("DEFAULT_WINDOW", "12")
    assert Settings(_env_file=None).DEFAULT_WINDOW == 12


@pytest.mark.parametrize(
    "field, value",
    [("CHARACTERISTIC", 3), ("DEFAULT_FORMAT", "ascii"), ("DEFAULT_WINDOW", 0), ("DEFAULT_BOUND", -1)],
)
def test_invalid_settings(field, value):
    with pytest.raises(ValidationError):
        Settings(_env_file=None, **{field: value})

"""Test the configuration module."""

import os

import pytest
from pydantic import ValidationError

from jointgraph.config import Settings, get_settings


def test_threads_defaults_to_none(monkeypatch: pytest.MonkeyPatch) -> None:
    """JOINTGRAPH_THREADS should be unset by default."""
    monkeypatch.delenv("JOINTGRAPH_THREADS", raising=False)
    get_settings.cache_clear()

    settings = get_settings()

    assert settings.threads is None
    assert settings.resolved_threads() == (os.cpu_count() or 1)


def test_threads_can_be_overridden_from_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """JOINTGRAPH_THREADS env var should set the worker cap."""
    monkeypatch.setenv("JOINTGRAPH_THREADS", "3")
    get_settings.cache_clear()

    settings = get_settings()

    assert settings.threads == 3
    assert settings.resolved_threads() == 3


def test_explicit_threads_override_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """An explicit --threads value should win over the environment."""
    monkeypatch.setenv("JOINTGRAPH_THREADS", "3")
    get_settings.cache_clear()

    assert get_settings().resolved_threads(7) == 7


def test_threads_must_be_positive(monkeypatch: pytest.MonkeyPatch) -> None:
    """A zero worker cap should be rejected."""
    monkeypatch.setenv("JOINTGRAPH_THREADS", "0")

    with pytest.raises(ValidationError):
        Settings()


def test_log_level_defaults_to_warning(monkeypatch: pytest.MonkeyPatch) -> None:
    """JOINTGRAPH_LOG_LEVEL should default to WARNING."""
    monkeypatch.delenv("JOINTGRAPH_LOG_LEVEL", raising=False)
    get_settings.cache_clear()

    assert get_settings().log_level == "WARNING"

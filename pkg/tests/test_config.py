import pytest

from arf_engine.config import Settings, resolve
from arf_engine.errors import ConfigError


def test_defaults():
    s = Settings.from_env()
    assert s == Settings()
    assert s.enumerate_max_dim == 8
    assert s.democratic_max_dim == 20
    assert s.filter_max_dim == 4
    assert s.log_level == "WARNING"


def test_specific_variable_wins(monkeypatch):
    monkeypatch.setenv("ARF_ENGINE_MAX_DIM", "6")
    monkeypatch.setenv("ARF_ENGINE_FILTER_MAX_DIM", "2")
    s = Settings.from_env()
    assert s.filter_max_dim == 2
    assert s.enumerate_max_dim == 6
    assert s.democratic_max_dim == 6


def test_order_limit_has_no_shared_fallback(monkeypatch):
    monkeypatch.setenv("ARF_ENGINE_MAX_DIM", "6")
    assert Settings.from_env().enumerate_max_order == Settings.enumerate_max_order


def test_blank_value_means_default(monkeypatch):
    monkeypatch.setenv("ARF_ENGINE_ENUMERATE_MAX_DIM", "  ")
    assert Settings.from_env().enumerate_max_dim == 8


@pytest.mark.parametrize("raw", ["eight", "4.5", "-1"])
def test_bad_integer(monkeypatch, raw):
    monkeypatch.setenv("ARF_ENGINE_DEMOCRATIC_MAX_DIM", raw)
    with pytest.raises(ConfigError):
        Settings.from_env()


def test_log_level(monkeypatch):
    monkeypatch.setenv("ARF_ENGINE_LOG_LEVEL", "debug")
    assert Settings.from_env().log_level == "DEBUG"
    monkeypatch.setenv("ARF_ENGINE_LOG_LEVEL", "chatty")
    with pytest.raises(ConfigError):
        Settings.from_env()


def test_dotenv_file(tmp_path):
    (tmp_path / ".env").write_text("ARF_ENGINE_ENUMERATE_MAX_DIM=2\n")
    assert Settings.from_env().enumerate_max_dim == 2


def test_environment_beats_dotenv(tmp_path, monkeypatch):
    (tmp_path / ".env").write_text("ARF_ENGINE_ENUMERATE_MAX_DIM=2\n")
    monkeypatch.setenv("ARF_ENGINE_ENUMERATE_MAX_DIM", "4")
    assert Settings.from_env().enumerate_max_dim == 4


def test_resolve_keeps_explicit_settings():
    s = Settings(filter_max_dim=0)
    assert resolve(s) is s
    assert resolve(None) == Settings()

from pathlib import Path

import pytest

from arf_engine.config import Settings
from arf_engine.quadform import QuadraticForm

DATA_DIR = Path(__file__).parent / "data"

ENV_VARS = (
    "ARF_ENGINE_MAX_DIM",
    "ARF_ENGINE_ENUMERATE_MAX_DIM",
    "ARF_ENGINE_DEMOCRATIC_MAX_DIM",
    "ARF_ENGINE_FILTER_MAX_DIM",
    "ARF_ENGINE_MAX_ORDER",
    "ARF_ENGINE_LOG_LEVEL",
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """每个测试都在没有 .env 和 ARF_ENGINE_* 变量的环境里跑"""
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def torus0() -> QuadraticForm:
    return QuadraticForm.hyperbolic(0)


@pytest.fixture
def torus1() -> QuadraticForm:
    return QuadraticForm.hyperbolic(1)


@pytest.fixture
def plus4() -> QuadraticForm:
    """dim 4, Arf 0"""
    return QuadraticForm.standard(2, "0000")


@pytest.fixture
def minus4() -> QuadraticForm:
    """dim 4, Arf 1"""
    return QuadraticForm.standard(2, "1100")


import pytest
from pydantic import ValidationError

from settings import WorkbenchSettings, get_settings

ENV = ("WORKBENCH_SEED", "WORKBENCH_SAMPLES", "WORKBENCH_MORPHISM_SAMPLES", "WORKBENCH_DEPTH", "WORKBENCH_LOG_LEVEL")


@pytest.fixture
def clean_env(monkeypatch):
    for name in ENV:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    settings = get_settings()
    assert (settings.seed, settings.samples, settings.morphism_samples, settings.depth) == (7, 1000, 500, 20)
    assert settings.log_level == "INFO"


def test_environment_then_arguments(clean_env):
    clean_env.setenv("WORKBENCH_SEED", "42")
    clean_env.setenv("WORKBENCH_SAMPLES", "")
    assert get_settings().seed == 42
    assert get_settings().samples == 1000
    assert get_settings(seed=3, depth=5).model_dump(include={"seed", "depth"}) == {"seed": 3, "depth": 5}


def test_sample_counts_must_be_positive():
    with pytest.raises(ValidationError):
        WorkbenchSettings(samples=0)

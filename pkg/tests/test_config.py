from fractions import Fraction

import pytest

from common.config import load_config
from common.errors import InputError
from common.models import RunConfig


def test_defaults(monkeypatch):
    for name in ("CYCLO_WORKERS", "CYCLO_SEED", "CYCLO_CHUNK_SIZE", "CYCLO_FORMAT"):
        monkeypatch.delenv(name, raising=False)
    config = load_config()
    assert config.workers >= 1
    assert config.seed == 0
    assert config.chunk_size == 1 << 20
    assert config.output_format == "csv"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CYCLO_WORKERS", "3")
    monkeypatch.setenv("CYCLO_SEED", "42")
    monkeypatch.setenv("CYCLO_FORMAT", "JSON")
    config = load_config()
    assert (config.workers, config.seed, config.output_format) == (3, 42, "json")


@pytest.mark.parametrize("name,value", [
    ("CYCLO_WORKERS", "0"),
    ("CYCLO_WORKERS", "many"),
    ("CYCLO_CHUNK_SIZE", "-5"),
    ("CYCLO_FORMAT", "xml"),
])
def test_bad_environment(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(RuntimeError, match=name):
        load_config()


def test_run_config_limits():
    with pytest.raises(InputError):
        RunConfig(command="sweep", pqr_limit=(1 << 40) + 1)
    with pytest.raises(InputError):
        RunConfig(command="sweep", worker_count=0)
    config = RunConfig(command="grid", thresholds=[Fraction(2, 3)])
    assert config.to_dict()["thresholds"] == ["2/3"]

import pytest

from cyclotomic_bmw import configfile


@pytest.fixture(autouse=True)
def config_path(tmp_path, monkeypatch):
    """Keep every test away from the user's configuration file."""
    path = tmp_path / "config" / "config.toml"
    monkeypatch.setattr(configfile, "get_config_path", lambda: path)
    monkeypatch.delenv("CYBMW_THREADS", raising=False)
    return path

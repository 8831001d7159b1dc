import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long numeric sweeps; deselect with -m 'not slow'")


@pytest.fixture
def log_dirs(tmp_path, monkeypatch):
    root = tmp_path / "logs"
    monkeypatch.setenv("CUBE_LOG_DIR", str(root))
    return {"root": root, "events": root / "events", "runs": root / "runs", "errors": root / "errors"}

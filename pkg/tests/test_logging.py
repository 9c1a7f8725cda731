import logging

import pytest

from clb.logging import setup_logging


@pytest.fixture(autouse=True)
def restore_root():
    root = logging.getLogger()
    level = root.level
    yield
    for h in list(root.handlers):
        h.close()
        root.removeHandler(h)
    root.setLevel(level)


def test_file_mode_writes_to_log_file(monkeypatch, tmp_path):
    path = tmp_path / "runs" / "batch.log"
    monkeypatch.setenv("CLB_CONSOLE_LOGS", "false")
    monkeypatch.setenv("CLB_LOG_FILE", str(path))
    setup_logging("debug")
    logging.getLogger("clb.test").debug("orbit batch done")
    for h in logging.getLogger().handlers:
        h.flush()
    assert logging.getLogger().level == logging.DEBUG
    text = path.read_text(encoding="utf-8")
    assert "DEBUG | clb.test | orbit batch done" in text


def test_file_mode_defaults_under_data(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("CLB_CONSOLE_LOGS", "false")
    monkeypatch.setenv("CLB_LOG_FILE", "")
    setup_logging()
    logging.getLogger("clb.test").info("hello")
    for h in logging.getLogger().handlers:
        h.flush()
    assert "hello" in (tmp_path / "data" / "clb.log").read_text(encoding="utf-8")


def test_console_mode_without_rich(monkeypatch):
    monkeypatch.setenv("CLB_CONSOLE_LOGS", "true")
    setup_logging("nonsense")
    (handler,) = logging.getLogger().handlers
    assert type(handler) is logging.StreamHandler
    assert logging.getLogger().level == logging.INFO

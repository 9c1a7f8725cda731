import pytest

from clb.algebra.field import FieldDescriptor
from clb.forms.space import standard_space


@pytest.fixture
def F3():
    return FieldDescriptor(3)


@pytest.fixture
def F5():
    return FieldDescriptor(5)


@pytest.fixture
def F9():
    return FieldDescriptor(3, 2)


@pytest.fixture
def sp2(F3):
    return standard_space(F3, "Sp", 2)


@pytest.fixture(autouse=True)
def quiet_env(monkeypatch, tmp_path):
    # keep reports, fixtures and log files out of the working tree
    monkeypatch.setenv("CLB_REPORT_DIR", str(tmp_path / "reports"))
    monkeypatch.setenv("CLB_FIXTURES_DIR", str(tmp_path / "fixtures"))
    monkeypatch.setenv("CLB_LOG_FILE", str(tmp_path / "clb.log"))
    monkeypatch.setenv("CLB_RICH", "false")
    monkeypatch.setenv("CLB_RICH_LOGS", "false")

from clb.config import EnumerationBudget, load_settings


def test_settings_read_env(monkeypatch, tmp_path):
    monkeypatch.setenv("CLB_SEED", "7")
    monkeypatch.setenv("CLB_MAX_DIM", "2")
    monkeypatch.setenv("CLB_MAX_POINTS", "100")
    s = load_settings()
    assert s.seed == 7
    assert s.report_dir == str(tmp_path / "reports")
    assert s.rich_summary is False
    b = s.budget()
    assert b.max_dim == 2 and b.max_points == 100
    assert b.max_q == 5 and b.max_q_hermitian == 9


def test_settings_defaults(monkeypatch):
    for name in ("CLB_SEED", "CLB_MAX_DIM", "CLB_MAX_Q", "CLB_MAX_POINTS", "CLB_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    s = load_settings()
    assert s.seed == 0 and s.log_level == "INFO"
    assert s.budget() == EnumerationBudget()


def test_budget_from_env_falls_back(monkeypatch):
    monkeypatch.setenv("CLB_MAX_Q", "7.0")
    monkeypatch.setenv("CLB_MAX_POINTS", "lots")
    b = EnumerationBudget.from_env()
    assert b.max_q == 7
    assert b.max_points == 50_000


def test_settings_budget_uses_the_same_reader(monkeypatch):
    monkeypatch.setenv("CLB_MAX_DIM_HERMITIAN", "bad")
    monkeypatch.setenv("CLB_MAX_Q_HERMITIAN", "25")
    b = load_settings().budget()
    assert b == EnumerationBudget.from_env()
    assert b.max_dim_hermitian == 2 and b.max_q_hermitian == 25

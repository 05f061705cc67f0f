from config.settings import CrucialConfig, get_config


def test_defaults_are_valid():
    config = get_config()
    assert config.validate() == []
    policy = config.precision_policy()
    assert policy.start <= policy.maximum


def test_bad_values_are_reported(monkeypatch):
    monkeypatch.setattr(CrucialConfig, "DEGREE_CAP", 1)
    monkeypatch.setattr(CrucialConfig, "LOG_LEVEL", "chatty")
    problems = CrucialConfig.validate()
    assert len(problems) == 2
    assert any("DEGREE_CAP" in p for p in problems)


def test_precision_bounds(monkeypatch):
    monkeypatch.setattr(CrucialConfig, "PRECISION_MAX", 8)
    monkeypatch.setattr(CrucialConfig, "PRECISION_START", 16)
    assert CrucialConfig.validate() == ["BERKCRUCIAL_PRECISION_MAX must be at least BERKCRUCIAL_PRECISION_START"]


def test_ramification_ceiling(monkeypatch):
    assert get_config().precision_policy().max_ramification is None
    monkeypatch.setattr(CrucialConfig, "MAX_RAMIFICATION", 12)
    assert get_config().precision_policy().max_ramification == 12
    monkeypatch.setattr(CrucialConfig, "MAX_RAMIFICATION", -1)
    assert CrucialConfig.validate() == ["BERKCRUCIAL_MAX_RAMIFICATION must be non-negative"]

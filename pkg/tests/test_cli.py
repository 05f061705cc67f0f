import json

import pytest

from berkcrucial.cli import parse_map, parse_point, run
from berkcrucial.points import BerkPoint
from config.settings import CrucialConfig


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def _error(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_parse_map_and_point():
    f = parse_map("z^2+1/p", 5)
    assert f.d == 2
    assert f.res_val == 4
    assert parse_point("", 5) == BerkPoint.canonical(5)
    assert parse_point("inf", 5).is_infinity
    assert parse_point("1/p;-1", 5) == BerkPoint.type_ii(0, -1, 5)
    with pytest.raises(ValueError):
        parse_point("0;1;2", 5)


def test_crucial_command(capsys):
    assert run(["crucial", "--at", "0;1"]) == 0
    assert _json_out(capsys)["crucial"] == "1/2"


def test_ordres_command(capsys):
    assert run(["ordres", "--map", "p*z^2", "--at", "0;-1"]) == 0
    doc = _json_out(capsys)
    assert doc["direct"] == "0/1"
    assert doc["equal"] is True


def test_minresloc_command(capsys):
    assert run(["minresloc", "--map", "z^2+1/p"]) == 0
    doc = _json_out(capsys)
    assert doc["min"] == "1/1"
    assert doc["potentially_good"] is False
    assert len(doc["locus"]) == 1


def test_goodred_command(capsys):
    assert run(["goodred"]) == 0
    assert _json_out(capsys) == {"potentially_good": True, "min": "0/1"}


def test_degrees_command(capsys):
    assert run(["degrees"]) == 0
    assert _json_out(capsys)["local_deg"] == 2


def test_weights_as_csv(capsys):
    assert run(["weights", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["point,w", "zeta(0;0),1"]


def test_crucialtree_defaults_to_dot(capsys):
    assert run(["crucialtree"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph crucial {")
    assert "w=1" in out


def test_profile_command(capsys):
    assert run(["profile", "--kind", "rho", "--to", "0;2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "t,value"
    assert lines[-1] == "2/1,2/1"


def test_output_file(tmp_path, capsys):
    path = tmp_path / "crucial.json"
    assert run(["crucial", "--at", "0;-1", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text())["crucial"] == "1/2"


def test_residue_extension_exits_with_two(capsys):
    assert run(["weights", "--map", "z^2+2"]) == 2
    assert _error(capsys)["error"] == "UnsupportedResidueExtension"


def test_wild_ramification_exits_with_two(capsys):
    assert run(["weights", "--p", "3", "--map", "(6*z - 6)/(z^2 + 3*z + 9)"]) == 2
    assert _error(capsys)["error"] in {"UnsupportedRamification", "UnsupportedResidueExtension"}


def test_bad_input_exits_with_one(capsys):
    assert run(["crucial", "--map", "sin(z)"]) == 1
    assert run(["crucial", "--at", "inf"]) == 1
    assert _error(capsys)["error"] == "ValueError"


def test_invalid_configuration(monkeypatch):
    monkeypatch.setattr(CrucialConfig, "DEGREE_CAP", 1)
    assert run(["crucial"]) == 1

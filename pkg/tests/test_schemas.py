import json
from fractions import Fraction

import pytest
from marshmallow import ValidationError

from berkcrucial import schemas
from berkcrucial.degrees import degree_data
from berkcrucial.tower import INF


def test_rational_field():
    field = schemas.RationalField()
    assert field.deserialize("3/4") == Fraction(3, 4)
    assert field.deserialize("inf") == INF
    assert field.deserialize(2) == 2
    with pytest.raises(ValidationError):
        field.deserialize("abc")


def test_tower_field_rejects_garbage():
    with pytest.raises(ValidationError):
        schemas.TowerElemField().deserialize({"p": 5})


def test_point_type_is_checked():
    with pytest.raises(ValidationError):
        schemas.load("point", {"type": "III", "center": "inf"})


def test_map_document_loads_a_map(square):
    f = schemas.load("map-v1", square.as_dict())
    assert f.d == 2
    assert f.res_val == 0


def test_crucial_document(can):
    doc = schemas.dump("crucial-v1", {"at": can.as_dict(), "crucial": Fraction(1, 2)})
    assert doc["crucial"] == "1/2"
    assert doc["at"]["t"] == "0/1"


def test_degrees_document(square, can):
    text = schemas.dumps("degrees-v1", degree_data(square, can).as_dict())
    assert json.loads(text)["local_deg"] == 2
    assert schemas.loads("degrees-v1", text)["other_surplus"] == 0


def test_unknown_schema():
    with pytest.raises(ValueError):
        schemas.dump("nope", {})

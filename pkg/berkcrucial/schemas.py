"""
Marshmallow schemas for the JSON documents the toolkit emits.
Rationals travel as "num/den" strings, tower elements as coefficient lists with a (p, e) header.
"""

import json
import logging
from fractions import Fraction
from typing import Any, Dict, Type

from marshmallow import Schema, ValidationError, fields, post_load, validate

from berkcrucial.maps import RationalMapRep
from berkcrucial.tower import INF, TowerElem, ext_str

logger = logging.getLogger(__name__)


class RationalField(fields.Field):
    """Exact rational (or +-inf) serialized as "num/den"."""

    default_error_messages = {"invalid": "Not a rational: {value!r}."}

    def _parse(self, value: Any):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if value in (INF, -INF):
            return value
        if isinstance(value, str):
            if value == "inf":
                return INF
            if value == "-inf":
                return -INF
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError):
                pass
        raise self.make_error("invalid", value=value)

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return ext_str(self._parse(value))

    def _deserialize(self, value, attr, data, **kwargs):
        return self._parse(value)


class TowerElemField(fields.Field):
    """TowerElem as {"p": p, "e": e, "coeffs": ["num/den", ...]}."""

    default_error_messages = {"invalid": "Not a tower element: {value!r}."}

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        if isinstance(value, TowerElem):
            return value.as_dict()
        self._deserialize(value, attr, obj)
        return value

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            p, e = int(value["p"]), int(value["e"])
            coeffs = [Fraction(c) for c in value["coeffs"]]
            return TowerElem(p, e, coeffs)
        except (KeyError, TypeError, ValueError, ZeroDivisionError):
            raise self.make_error("invalid", value=value)


class CenterField(TowerElemField):
    """A point center; the string "inf" stands for the point at infinity."""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None or value == "inf":
            return "inf"
        return super()._serialize(value, attr, obj, **kwargs)

    def _deserialize(self, value, attr, data, **kwargs):
        if value == "inf":
            return None
        return super()._deserialize(value, attr, data, **kwargs)


class ResidueField(fields.Field):
    """Direction residue in F_p, or "inf" for the upward direction."""

    def _serialize(self, value, attr, obj, **kwargs):
        return "inf" if value is None or value == "inf" else int(value)

    def _deserialize(self, value, attr, data, **kwargs):
        if value == "inf":
            return None
        if isinstance(value, int) and value >= 0:
            return value
        raise ValidationError(f"Not a residue: {value!r}.")


class PointSchema(Schema):
    """Schema for a type I or type II point."""
    type = fields.Str(required=True, validate=validate.OneOf(["I", "II"]))
    center = CenterField(required=True)
    t = RationalField(required=False)
    err = RationalField(required=False)


class DirectionSchema(Schema):
    base = fields.Nested(PointSchema, required=True)
    residue = ResidueField(required=True)


class MapSchema(Schema):
    """Schema "map-v1": a rational map by its minimal lift."""
    p = fields.Int(required=True, validate=validate.Range(min=2))
    d = fields.Int(required=True, validate=validate.Range(min=1))
    numerator = fields.List(TowerElemField(), required=True)
    denominator = fields.List(TowerElemField(), required=True)

    @post_load
    def make_map(self, data, **kwargs):
        return RationalMapRep.from_coefficients(data["numerator"], data["denominator"], data["p"])


class TreeSchema(Schema):
    """Schema "tree-v1"."""
    vertices = fields.List(fields.Nested(PointSchema), required=True)
    edges = fields.List(fields.List(fields.Int()), required=True)
    lengths = fields.List(RationalField(), required=True)
    annotations = fields.Dict(keys=fields.Str(), values=fields.Str(), required=False)


class DirectionRecordSchema(Schema):
    direction = fields.Nested(DirectionSchema, required=True)
    image = fields.Nested(DirectionSchema, required=True)
    m = fields.Int(required=True, validate=validate.Range(min=0))
    s = fields.Int(required=True, validate=validate.Range(min=0))


class DegreesSchema(Schema):
    """Schema "degrees-v1": local, directional and surplus degrees at one point."""
    at = fields.Nested(PointSchema, required=True)
    image = fields.Nested(PointSchema, required=True)
    d = fields.Int(required=True)
    local_deg = fields.Int(required=True, validate=validate.Range(min=0))
    reduction = fields.Dict(required=True)
    directions = fields.List(fields.Nested(DirectionRecordSchema), required=True)
    other_surplus = fields.Int(required=True, validate=validate.Range(min=0))


class WeightSchema(Schema):
    point = fields.Nested(PointSchema, required=True)
    w = fields.Int(required=True, validate=validate.Range(min=1))


class CrucialSchema(Schema):
    """Schema "crucial-v1": every crucial-pipeline answer; fields present depend on the query."""
    at = fields.Nested(PointSchema, required=False)
    crucial = RationalField(required=False)
    direct = RationalField(required=False)
    formula = RationalField(required=False)
    closed_form = RationalField(required=False)
    equal = fields.Bool(required=False)
    locus = fields.List(fields.Nested(PointSchema), required=False)
    min = RationalField(required=False)
    min_crucial = RationalField(required=False)
    potentially_good = fields.Bool(required=False)
    weights = fields.List(fields.Nested(WeightSchema), required=False)
    total = fields.Int(required=False)
    diam = fields.Dict(keys=fields.Str(), values=RationalField(allow_none=True), required=False)


class EquidistRowSchema(Schema):
    label = fields.Str(required=True)
    n = fields.Int(required=True, validate=validate.Range(min=1))
    nu_integral = RationalField(required=True)
    mu_value = RationalField(required=True)
    mu_err = RationalField(required=True)
    lhs_upper = RationalField(required=True)
    rhs = RationalField(required=True)
    margin = RationalField(required=True)
    ok = fields.Bool(required=True)


class EquidistSchema(Schema):
    """Schema "equidist-v1": one row per (n, test function)."""
    p = fields.Int(required=True)
    d = fields.Int(required=True)
    rows = fields.List(fields.Nested(EquidistRowSchema), required=True)


SCHEMAS: Dict[str, Type[Schema]] = {
    "map-v1": MapSchema,
    "point": PointSchema,
    "tree-v1": TreeSchema,
    "degrees-v1": DegreesSchema,
    "crucial-v1": CrucialSchema,
    "equidist-v1": EquidistSchema,
}


def _schema(kind: str) -> Schema:
    if kind not in SCHEMAS:
        raise ValueError(f"unknown schema {kind!r}; expected one of {sorted(SCHEMAS)}")
    return SCHEMAS[kind]()


def dump(kind: str, document: Dict[str, Any]) -> Dict[str, Any]:
    """Serialize document and validate the result against the schema."""
    schema = _schema(kind)
    data = schema.dump(document)
    errors = schema.validate(data)
    if errors:
        logger.error(f"{kind} document failed validation: {errors}")
        raise ValidationError(errors)
    return data


def dumps(kind: str, document: Dict[str, Any]) -> str:
    return json.dumps(dump(kind, document), sort_keys=True, indent=2)


def load(kind: str, data: Dict[str, Any]) -> Any:
    return _schema(kind).load(data)


def loads(kind: str, text: str) -> Any:
    return load(kind, json.loads(text))


__all__ = [
    "SCHEMAS",
    "CenterField",
    "RationalField",
    "TowerElemField",
    "dump",
    "dumps",
    "load",
    "loads",
]

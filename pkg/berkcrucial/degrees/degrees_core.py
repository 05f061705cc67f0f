"""Local, directional and surplus degrees at type II points.

At S = zeta(a; t) with image zeta(c; t') the map is read in the charts
z = a + b w and y = c + b' w (v(b) = t, v(b') = t'); the reduction of that
conjugate carries the local degree and the tangent map. Surplus degrees and
pullback masses are root counts in disks, so no root is ever isolated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from berkcrucial.errors import IdentityViolation
from berkcrucial.maps import Mobius, Poly, RationalMapRep, ReducedMap, Residue
from berkcrucial.points import (
    BerkPoint,
    Direction,
    closed_disk_root_count,
    map_image,
    open_disk_root_count,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DirectionRecord:
    direction: Direction
    image: Direction
    m: int
    s: int

    def as_dict(self) -> dict:
        return {
            "direction": self.direction.as_dict(),
            "image": self.image.as_dict(),
            "m": self.m,
            "s": self.s,
        }


@dataclass(frozen=True)
class DegreeData:
    """Degree bookkeeping at one type II point, over every direction in P^1(F_p)."""

    at: BerkPoint
    image: BerkPoint
    d: int
    local_deg: int
    reduction: ReducedMap
    records: Tuple[DirectionRecord, ...]

    @property
    def is_fixed(self) -> bool:
        return self.image == self.at

    @property
    def other_surplus(self) -> int:
        """Surplus carried by directions outside P^1(F_p)."""
        return self.d - self.local_deg - sum(r.s for r in self.records)

    def record(self, direction: Direction) -> DirectionRecord:
        if direction.base != self.at:
            raise ValueError(f"direction is not based at {self.at.label()}")
        for rec in self.records:
            if rec.direction.residue == direction.residue:
                return rec
        raise ValueError(f"no direction with residue {direction.residue}")

    def directional_sum(self, target: Residue) -> int:
        """Sum of m_v over the enumerated directions mapping to target."""
        return sum(r.m for r in self.records if r.image.residue == target)

    def as_dict(self) -> dict:
        return {
            "at": self.at.as_dict(),
            "image": self.image.as_dict(),
            "d": self.d,
            "local_deg": self.local_deg,
            "reduction": self.reduction.as_dict(),
            "directions": [r.as_dict() for r in self.records],
            "other_surplus": self.other_surplus,
        }


# ----------------------------------------------------------------------
# Charts
# ----------------------------------------------------------------------

def image_base(f: RationalMapRep, s: BerkPoint) -> BerkPoint:
    """f(s), replaced by s itself when fixed so both ends share one chart."""
    image = map_image(f, s)
    return s if image == s else image


def chart_map(f: RationalMapRep, s: BerkPoint) -> Tuple[RationalMapRep, BerkPoint]:
    """The conjugate psi o f o phi^-1 moving s and f(s) to S_can."""
    target = image_base(f, s)
    if target.is_type_i:
        raise ValueError(f"{s.label()} maps to a type I point")
    source = Mobius.affine(s.center, s.uniformizer(), f.p)
    inner = f.lift.compose(source.as_form())
    outer = Mobius.affine(target.center, target.uniformizer(), f.p).adjugate()
    return RationalMapRep(outer.apply_linear(inner), check=False), target


def _directions(s: BerkPoint) -> List[Direction]:
    return [Direction(s, r) for r in range(s.p)] + [Direction(s, None)]


def roots_in(poly: Poly, v: Direction, total: int) -> int:
    """Roots of poly in U_v, counting total - deg(poly) roots at infinity."""
    s = v.base
    if v.is_up:
        return total - closed_disk_root_count(poly.taylor(s.center), s.t)
    return open_disk_root_count(poly.taylor(v.center()), s.t)


def _surplus(f: RationalMapRep, v: Direction, image_dir: Direction, target: BerkPoint) -> int:
    if image_dir.is_up:
        poly = f.numerator - f.denominator * target.center
    else:
        poly = f.denominator
    return roots_in(poly, v, f.d)


@lru_cache(maxsize=512)
def degree_data(f: RationalMapRep, s: BerkPoint) -> DegreeData:
    g, target = chart_map(f, s)
    red = g.reduction
    records = []
    for v in _directions(s):
        w = Direction(target, red.value(v.residue))
        records.append(DirectionRecord(v, w, red.multiplicity(v.residue), _surplus(f, v, w, target)))
    data = DegreeData(s, target, f.d, red.degree, red, tuple(records))
    if data.other_surplus < 0:
        raise IdentityViolation(f"surplus degrees at {s.label()} exceed d - deg", data.as_dict())
    logger.debug(f"degrees at {s.label()}: local {data.local_deg}, image {target.label()}")
    return data


# ----------------------------------------------------------------------
# Per-direction queries
# ----------------------------------------------------------------------

def local_degree(f: RationalMapRep, s: BerkPoint) -> int:
    return degree_data(f, s).local_deg


def tangent_image(f: RationalMapRep, v: Direction) -> Direction:
    return degree_data(f, v.base).record(v).image


def directional_degree(f: RationalMapRep, v: Direction) -> int:
    return degree_data(f, v.base).record(v).m


def surplus_degree(f: RationalMapRep, v: Direction) -> int:
    return degree_data(f, v.base).record(v).s


def pullback_mass(f: RationalMapRep, base: BerkPoint, v: Direction) -> int:
    """(f^* delta_base)(U_v) for a type II base."""
    data = degree_data(f, v.base)
    rec = data.record(v)
    if base == data.image:
        return rec.s
    toward = data.image.direction_to(base)
    return rec.s + (rec.m if rec.image == toward else 0)


def potential_slope(f: RationalMapRep, base: BerkPoint, v: Direction) -> int:
    """Slope of G_base leaving v.base along v."""
    mass = pullback_mass(f, base, v)
    if v.base != base and v.contains(base):
        return mass - f.d
    return mass


# ----------------------------------------------------------------------
# Identification checks
# ----------------------------------------------------------------------

def fixed_count_in(f: RationalMapRep, v: Direction) -> int:
    """Classical fixed points of f in U_v with multiplicity."""
    poly = f.numerator - f.denominator * Poly.z(f.p)
    return roots_in(poly, v, f.d + 1)


def fixed_reduction_orders(f: RationalMapRep, s: BerkPoint) -> Dict[Residue, int]:
    """ord_r [reduction = Id] at a type II fixed point with non-identity reduction."""
    data = degree_data(f, s)
    if not data.is_fixed:
        raise ValueError(f"{s.label()} is not fixed")
    return data.reduction.fixed_orders()


def first_identification(f: RationalMapRep, s: BerkPoint) -> Dict[Residue, Tuple[int, int]]:
    """Per residue: (fixed points in U_v, s_v + ord_r[reduction = Id])."""
    data = degree_data(f, s)
    orders = fixed_reduction_orders(f, s)
    return {
        rec.direction.residue: (fixed_count_in(f, rec.direction), rec.s + orders.get(rec.direction.residue, 0))
        for rec in data.records
    }


def second_identification(f: RationalMapRep, s: BerkPoint) -> Dict[Residue, Tuple[bool, bool]]:
    """Per residue at a non-fixed point: (U_v meets Fix(f), criterion (a) or (b) or (c))."""
    data = degree_data(f, s)
    if data.is_fixed:
        raise ValueError(f"{s.label()} is fixed")
    toward_image = s.direction_to(data.image)
    back = data.image.direction_to(s)
    out: Dict[Residue, Tuple[bool, bool]] = {}
    for rec in data.records:
        meets = fixed_count_in(f, rec.direction) > 0
        predicted = rec.direction == toward_image or rec.image == back or rec.s > 0
        out[rec.direction.residue] = (meets, predicted)
    return out


def preimage_directions(f: RationalMapRep, s: BerkPoint, target: Optional[int]) -> Dict[Residue, int]:
    """Directions at s over the image direction with residue target, with m_v."""
    return degree_data(f, s).reduction.preimages(target)


__all__ = [
    "DegreeData",
    "DirectionRecord",
    "chart_map",
    "degree_data",
    "directional_degree",
    "first_identification",
    "fixed_count_in",
    "fixed_reduction_orders",
    "image_base",
    "local_degree",
    "potential_slope",
    "preimage_directions",
    "pullback_mass",
    "roots_in",
    "second_identification",
    "surplus_degree",
    "tangent_image",
]

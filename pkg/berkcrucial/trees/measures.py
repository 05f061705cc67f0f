"""Atomic signed measures on finite trees, valency measures and barycenters."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from berkcrucial.errors import InvalidMeasure
from berkcrucial.points import BerkPoint, Direction
from berkcrucial.tower import ext_str
from berkcrucial.trees.tree_core import FiniteTree, span

logger = logging.getLogger(__name__)

Mass = Union[int, Fraction]


class TreeMeasure:
    """Finite signed combination of point masses with exact rational weights."""

    def __init__(self, atoms: Iterable[Tuple[BerkPoint, Mass]] = ()) -> None:
        merged: List[Tuple[BerkPoint, Fraction]] = []
        for point, mass in atoms:
            mass = Fraction(mass)
            for k, (q, m) in enumerate(merged):
                if q == point:
                    merged[k] = (q, m + mass)
                    break
            else:
                merged.append((point, mass))
        self.atoms: List[Tuple[BerkPoint, Fraction]] = [(q, m) for q, m in merged if m != 0]

    @classmethod
    def dirac(cls, point: BerkPoint, mass: Mass = 1) -> "TreeMeasure":
        return cls([(point, mass)])

    # ------------------------------------------------------------------
    def total(self) -> Fraction:
        return sum((m for _, m in self.atoms), Fraction(0))

    def total_variation(self) -> Fraction:
        return sum((abs(m) for _, m in self.atoms), Fraction(0))

    def mass_at(self, point: BerkPoint) -> Fraction:
        for q, m in self.atoms:
            if q == point:
                return m
        return Fraction(0)

    def support(self) -> List[BerkPoint]:
        return [q for q, _ in self.atoms]

    def is_positive(self) -> bool:
        return all(m > 0 for _, m in self.atoms)

    def mass_in(self, direction: Direction) -> Fraction:
        """Mass of the open component U_v."""
        return sum((m for q, m in self.atoms if direction.contains(q)), Fraction(0))

    # ------------------------------------------------------------------
    def __add__(self, other: "TreeMeasure") -> "TreeMeasure":
        return TreeMeasure(self.atoms + other.atoms)

    def __neg__(self) -> "TreeMeasure":
        return self.scale(-1)

    def __sub__(self, other: "TreeMeasure") -> "TreeMeasure":
        return self + (-other)

    def scale(self, c: Mass) -> "TreeMeasure":
        return TreeMeasure([(q, m * Fraction(c)) for q, m in self.atoms])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeMeasure):
            return NotImplemented
        return not (self - other).atoms

    def __repr__(self) -> str:
        body = ", ".join(f"{q.label()}: {m}" for q, m in self.atoms)
        return f"TreeMeasure({{{body}}})"

    def retracted(self, tree: FiniteTree) -> "TreeMeasure":
        """Push-forward under the retraction onto tree."""
        return TreeMeasure([(tree.retract(q), m) for q, m in self.atoms])

    def vertex_annotations(self, tree: FiniteTree) -> Dict[int, str]:
        out: Dict[int, str] = {}
        for q, m in self.atoms:
            i = tree.index_of(q)
            if i is not None:
                out[i] = f"mass {m}"
        return out

    def as_dict(self) -> dict:
        return {"atoms": [{"point": q.as_dict(), "mass": ext_str(m)} for q, m in self.atoms]}


def valency_measure(tree: FiniteTree) -> TreeMeasure:
    """-(1/2) sum over vertices of (valency - 2) delta."""
    if tree.is_trivial():
        raise InvalidMeasure("valency measure of a trivial tree", tree.as_dict())
    return TreeMeasure(
        (v, Fraction(-(tree.valency(i) - 2), 2)) for i, v in enumerate(tree.vertices)
    )


def barycenter(measure: TreeMeasure, tree: FiniteTree) -> Tuple[BerkPoint, ...]:
    """Points of the tree where every branch carries at most half the mass.

    The region is a vertex or a segment; a segment is returned as its two
    extreme points.
    """
    if measure.total() != 1 or not measure.is_positive():
        raise InvalidMeasure("barycenter needs a probability measure", measure.as_dict())
    refined = tree.refine(measure.support())
    n = len(refined)
    mass = [measure.mass_at(v) for v in refined.vertices]
    sub = [Fraction(0)] * n
    for i in sorted(range(n), key=lambda j: refined.vertices[j].depth, reverse=True):
        sub[i] = mass[i] + sum((sub[c] for c in refined.children[i]), Fraction(0))
    half = Fraction(1, 2)
    inside = []
    for i in range(n):
        branches = [sub[c] for c in refined.children[i]]
        if refined.parent[i] is not None:
            branches.append(1 - sub[i])
        if all(b <= half for b in branches):
            inside.append(refined.vertices[i])
    if not inside:
        raise InvalidMeasure("empty barycenter region", measure.as_dict())
    region = span(inside)
    ends = [region.vertices[i] for i in region.endpoints()] if len(region) > 1 else list(region.vertices)
    logger.debug(f"barycenter region spans {[e.label() for e in ends]}")
    return tuple(sorted(ends, key=lambda v: (v.depth, v.label())))


__all__ = ["TreeMeasure", "valency_measure", "barycenter"]

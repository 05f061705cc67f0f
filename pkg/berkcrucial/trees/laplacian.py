"""Piecewise-linear functions on finite trees and their Laplacians.

The Laplacian uses outward slopes: the atom at a point is the sum of the
slopes of the function in every tree direction leaving it. Interior
breakpoints of an edge carry the atom slope_right - slope_left.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Optional

from berkcrucial.errors import IdentityViolation
from berkcrucial.maps import RationalMapRep
from berkcrucial.points import BerkPoint, PiecewiseLinear, segment_profile
from berkcrucial.tower import ExtValue
from berkcrucial.trees.measures import TreeMeasure, valency_measure
from berkcrucial.trees.tree_core import FiniteTree

logger = logging.getLogger(__name__)


class TreePLF:
    """One exact profile per edge, keyed by the child vertex index."""

    def __init__(self, tree: FiniteTree, edges: Dict[int, PiecewiseLinear], constant: Fraction = Fraction(0)) -> None:
        missing = [child for _, child in tree.edges() if child not in edges]
        if missing:
            raise ValueError(f"no profile for edges ending at {missing}")
        self.tree = tree
        self.edges = edges
        self.constant = Fraction(constant)

    @classmethod
    def from_profile(cls, tree: FiniteTree, kind: str, f: RationalMapRep, base: Optional[BerkPoint] = None) -> "TreePLF":
        edges = {child: segment_profile(kind, f, tree.segment(child), base) for _, child in tree.edges()}
        return cls(tree, edges)

    # ------------------------------------------------------------------
    def _combine(self, other: "TreePLF", sign: int) -> "TreePLF":
        if other.tree is not self.tree:
            other = other.restrict_to(self.tree)
        edges = {c: self.edges[c] + other.edges[c].scale(Fraction(sign)) for c in self.edges}
        return TreePLF(self.tree, edges, self.constant + sign * other.constant)

    def __add__(self, other: "TreePLF") -> "TreePLF":
        return self._combine(other, 1)

    def __sub__(self, other: "TreePLF") -> "TreePLF":
        return self._combine(other, -1)

    def scale(self, c: Fraction) -> "TreePLF":
        return TreePLF(self.tree, {k: v.scale(Fraction(c)) for k, v in self.edges.items()}, self.constant * c)

    # ------------------------------------------------------------------
    def vertex_value(self, i: int) -> ExtValue:
        tree = self.tree
        depth = tree.vertices[i].depth
        if tree.parent[i] is not None:
            return self.edges[i](depth)
        if tree.children[i]:
            return self.edges[tree.children[i][0]](depth)
        return self.constant

    def value_at(self, point: BerkPoint) -> ExtValue:
        """Value at a point of the tree."""
        where, i = self.tree.locate(point)
        if where == "vertex":
            return self.vertex_value(i)
        return self.edges[i](point.depth)

    def integrate(self, measure: TreeMeasure) -> Fraction:
        """Integral against the retraction of measure onto the tree."""
        return sum((m * self.value_at(q) for q, m in measure.retracted(self.tree).atoms), Fraction(0))

    def sup_abs(self) -> ExtValue:
        if not self.edges:
            return abs(self.constant)
        return max(g.sup_abs() for g in self.edges.values())

    def restrict_to(self, sub: FiniteTree) -> "TreePLF":
        """Restriction to a subtree whose points all lie on this tree."""
        tree = self.tree
        edges: Dict[int, PiecewiseLinear] = {}
        for par, child in sub.edges():
            lo, hi = sub.vertices[par].depth, sub.vertices[child].depth
            _, start = tree.locate(sub.vertices[child])
            chain: List[int] = []
            j: Optional[int] = start
            while j is not None and tree.vertices[j].depth > lo:
                chain.append(j)
                j = tree.parent[j]
            # chain runs upward from the bottom end
            pieces = []
            for k in reversed(chain):
                top = max(lo, tree.vertices[tree.parent[k]].depth)
                bottom = min(hi, tree.vertices[k].depth)
                if top < bottom:
                    pieces.append(self.edges[k].restrict(top, bottom))
            edges[child] = PiecewiseLinear.concat(pieces)
        constant = self.value_at(sub.vertices[0]) if sub.is_trivial() else Fraction(0)
        return TreePLF(sub, edges, constant)

    def as_rows(self) -> List[dict]:
        rows = []
        for par, child in self.tree.edges():
            for x, v in self.edges[child].as_rows():
                rows.append({"parent": par, "child": child, "t": x, "value": v})
        return rows


def laplacian(phi: TreePLF) -> TreeMeasure:
    """Sum of outward slopes at vertices and edge breakpoints."""
    tree = phi.tree
    atoms = []
    for i, v in enumerate(tree.vertices):
        mass = Fraction(0)
        for c in tree.children[i]:
            mass += phi.edges[c].slope_right(v.depth)
        if tree.parent[i] is not None:
            mass -= phi.edges[i].slope_left(v.depth)
        atoms.append((v, mass))
    for _, child in tree.edges():
        g = phi.edges[child]
        seg = tree.segment(child)
        for x in g.breakpoints():
            atoms.append((seg.point(x), g.slope_right(x) - g.slope_left(x)))
    return TreeMeasure(atoms)


def retracted_pullback_measure(f: RationalMapRep, tree: FiniteTree, base: BerkPoint) -> TreeMeasure:
    """Retraction of f^* delta_base onto the tree: Lap(-G_base) + d delta_r(base)."""
    anchor = TreeMeasure.dirac(tree.retract(base), f.d)
    if tree.is_trivial():
        return anchor
    return laplacian(TreePLF.from_profile(tree, "potential", f, base).scale(-1)) + anchor


def nu_f_gamma(f: RationalMapRep, tree: FiniteTree, base: Optional[BerkPoint] = None, check: bool = True) -> TreeMeasure:
    """Crucial measure of f relative to tree: Lap(Crucial) + valency measure.

    With check set, also computes [Lap(W_base - G_base)]/(d - 1) + delta_r(base)
    and raises IdentityViolation when the two disagree.
    """
    if tree.is_trivial():
        return TreeMeasure.dirac(tree.vertices[0])
    nu = laplacian(TreePLF.from_profile(tree, "crucial", f)) + valency_measure(tree)
    if check:
        base = base or BerkPoint.canonical(f.p)
        wedge = TreePLF.from_profile(tree, "wedge", f, base)
        potential = TreePLF.from_profile(tree, "potential", f, base)
        other = laplacian(wedge - potential).scale(Fraction(1, f.d - 1)) + TreeMeasure.dirac(tree.retract(base))
        if other != nu:
            raise IdentityViolation(
                "crucial Laplacian disagrees with the wedge and potential formula",
                {"from_crucial": nu.as_dict(), "from_wedge": other.as_dict(), "base": base.as_dict()},
            )
    logger.debug(f"crucial measure on {len(tree)} vertices: {nu}")
    return nu


__all__ = ["TreePLF", "laplacian", "retracted_pullback_measure", "nu_f_gamma"]

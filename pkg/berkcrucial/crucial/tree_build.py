"""The crucial tree: the span of the fixed points and the repelling type II fixed points."""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

from berkcrucial.degrees import degree_data, local_degree
from berkcrucial.errors import NonSeparable, PrecisionExhausted, UnsupportedExtension, UnsupportedResidueExtension
from berkcrucial.maps import PrecisionPolicy, RationalMapRep, fixed_point_divisor, padic_roots
from berkcrucial.points import BerkPoint, Direction, edge_profile
from berkcrucial.tower import INF, lift
from berkcrucial.trees import FiniteTree, span, unique_points

logger = logging.getLogger(__name__)

AUX_CANDIDATES = 12


def fixed_points(f: RationalMapRep, policy: Optional[PrecisionPolicy] = None) -> List[BerkPoint]:
    """Classical fixed points as certified type I points; infinity last when fixed."""
    poly, at_infinity = fixed_point_divisor(f)
    points = [BerkPoint.from_cluster(c) for c in padic_roots(poly, policy)] if poly.degree > 0 else []
    if at_infinity:
        points.append(BerkPoint.infinity(f.p))
    return points


def preimage_points(f: RationalMapRep, target: int, policy: Optional[PrecisionPolicy] = None) -> List[BerkPoint]:
    poly = f.numerator - f.denominator * lift(target, f.p)
    points = [BerkPoint.from_cluster(c) for c in padic_roots(poly, policy)] if poly.degree > 0 else []
    if poly.degree < f.d:
        points.append(BerkPoint.infinity(f.p))
    return points


def candidate_tree(f: RationalMapRep, fixed: List[BerkPoint], policy: Optional[PrecisionPolicy] = None) -> Tuple[FiniteTree, int]:
    """span(Fix(f) and f^-1(a0)) for the first workable integer a0 that is not fixed."""
    for a0 in range(AUX_CANDIDATES):
        value = lift(a0, f.p)
        if f(value) == value:
            continue
        try:
            pre = preimage_points(f, a0, policy)
        except (UnsupportedExtension, NonSeparable, PrecisionExhausted) as exc:
            logger.info(f"auxiliary target {a0} rejected: {exc}")
            continue
        return span(fixed + pre), a0
    raise UnsupportedResidueExtension("no auxiliary target with rational preimages", {"map": f.as_dict()})


def gamma_fp_criterion(f: RationalMapRep, s: BerkPoint, w: Direction) -> bool:
    """True when no classical point has all d preimages in U_w, i.e. s_w + m_w < d."""
    rec = degree_data(f, s).record(w)
    return rec.s + rec.m < f.d


def _fixed_candidates(f: RationalMapRep, tree: FiniteTree) -> List[BerkPoint]:
    """Type II fixed points of the tree where the local degree may exceed 1."""
    out: List[BerkPoint] = []
    for par, child in tree.edges():
        top, bottom = tree.vertices[par], tree.vertices[child]
        displacement = edge_profile("fixed", f, top, bottom)
        crucial = edge_profile("crucial", f, top, bottom)
        for lo, hi in displacement.zero_set():
            depths = {lo, hi} | {x for x in crucial.breakpoints() if lo <= x <= hi}
            for x in depths:
                if abs(x) != INF:
                    out.append(bottom.ancestor_at(x))
    for v in tree.vertices:
        if v.is_type_ii and degree_data(f, v).is_fixed:
            out.append(v)
    return unique_points(out)


def repelling_fixed_points(f: RationalMapRep, tree: FiniteTree) -> List[BerkPoint]:
    return [s for s in _fixed_candidates(f, tree) if local_degree(f, s) >= 2]


def crucial_tree(f: RationalMapRep, policy: Optional[PrecisionPolicy] = None) -> FiniteTree:
    """Span of the classical fixed points and the type II fixed points of local degree >= 2."""
    fixed = fixed_points(f, policy)
    candidate, a0 = candidate_tree(f, fixed, policy)
    repelling = repelling_fixed_points(f, candidate)
    tree = span(fixed + repelling)
    logger.info(
        f"crucial tree: {len(fixed)} fixed points, {len(repelling)} repelling type II, "
        f"{len(tree)} vertices (auxiliary target {a0})"
    )
    _validate(f, tree, candidate, span(fixed))
    return tree


def _validate(f: RationalMapRep, tree: FiniteTree, candidate: FiniteTree, fix_tree: FiniteTree) -> None:
    """Compare membership with the endpoint criterion at candidate vertices off the span of the fixed points."""
    for v in candidate.vertices:
        if not v.is_type_ii or fix_tree.contains(v):
            continue
        back = v.direction_to(fix_tree.retract(v))
        predicted = gamma_fp_criterion(f, v, back)
        actual = tree.contains(v)
        if predicted != actual:
            logger.warning(
                f"crucial tree membership of {v.label()} is {actual} but the endpoint criterion says {predicted}"
            )


__all__ = [
    "AUX_CANDIDATES",
    "candidate_tree",
    "crucial_tree",
    "fixed_points",
    "gamma_fp_criterion",
    "preimage_points",
    "repelling_fixed_points",
]

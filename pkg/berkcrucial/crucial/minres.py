"""MinResLoc by convex descent from S_can, cross-checked with the barycenter of nu_f."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from berkcrucial.crucial.crucial_core import crucial_at, crucial_slope, ordres_via_formula, wedge_at
from berkcrucial.degrees import degree_data, local_degree
from berkcrucial.errors import IdentityViolation, PrecisionExhausted, UnsupportedResidueExtension
from berkcrucial.maps import RationalMapRep
from berkcrucial.points import BerkPoint, Direction, VerticalSegment, path_profile, rho, segment_profile
from berkcrucial.trees import FiniteTree, TreeMeasure, TreePLF, barycenter, span, unique_points

logger = logging.getLogger(__name__)

MAX_STEPS = 256
MAX_HORIZON = Fraction(4096)


@dataclass(frozen=True)
class MinResLocus:
    """The minimum locus of ordRes_f: one point or the two ends of a segment."""

    ends: Tuple[BerkPoint, ...]
    min_crucial: Fraction
    min_ordres: Fraction

    @property
    def is_point(self) -> bool:
        return len(self.ends) == 1

    def as_dict(self) -> dict:
        return {
            "locus": [s.as_dict() for s in self.ends],
            "min_crucial": str(self.min_crucial),
            "min": str(self.min_ordres),
        }


def _directions(s: BerkPoint) -> List[Direction]:
    return [Direction(s, r) for r in range(s.p)] + [Direction(s, None)]


def _hidden_mass_bound(f: RationalMapRep, s: BerkPoint) -> int:
    """Largest (f^* delta_s)(U_v) any direction outside P^1(F_p) can carry."""
    data = degree_data(f, s)
    if data.is_fixed:
        return data.other_surplus
    back = data.image.direction_to(s)
    hidden_m = data.local_deg - data.directional_sum(back.residue)
    return data.other_surplus + hidden_m


def direction_slopes(f: RationalMapRep, s: BerkPoint) -> Dict[Direction, Fraction]:
    """Crucial slopes in every F_p-rational direction; certifies the others are non-negative."""
    hidden = _hidden_mass_bound(f, s)
    if Fraction(hidden, f.d - 1) > Fraction(1, 2):
        raise UnsupportedResidueExtension(
            f"descent at {s.label()} may need a direction outside P^1(F_p)",
            {"at": s.as_dict(), "hidden_mass": hidden},
        )
    return {v: crucial_slope(f, s, v) for v in _directions(s)}


def _next_stop(f: RationalMapRep, s: BerkPoint, v: Direction) -> BerkPoint:
    """First crucial-profile breakpoint along v, widening the horizon as needed."""
    horizon = Fraction(1)
    while horizon <= MAX_HORIZON:
        if v.is_up:
            seg = VerticalSegment(s.center, s.t - horizon, s.t)
            profile = segment_profile("crucial", f, seg)
            ahead = [x for x in profile.breakpoints() if x < s.t]
            if ahead:
                return BerkPoint.type_ii(s.center, max(ahead), f.p)
        else:
            seg = VerticalSegment(v.center(), s.t, s.t + horizon)
            profile = segment_profile("crucial", f, seg)
            ahead = [x for x in profile.breakpoints() if x > s.t]
            if ahead:
                return BerkPoint.type_ii(v.center(), min(ahead), f.p)
        horizon *= 2
    raise PrecisionExhausted(f"no breakpoint within {MAX_HORIZON} of {s.label()}", {"at": s.as_dict()})


def descend(f: RationalMapRep, start: Optional[BerkPoint] = None) -> BerkPoint:
    """Walk downhill from start until every direction has slope >= 0."""
    s = start or BerkPoint.canonical(f.p)
    for step in range(MAX_STEPS):
        slopes = direction_slopes(f, s)
        downhill = [v for v, m in slopes.items() if m < 0]
        if len(downhill) > 1:
            raise IdentityViolation("two descending directions contradict convexity", {"at": s.as_dict()})
        if not downhill:
            logger.info(f"descent stopped at {s.label()} after {step} steps")
            return s
        s = _next_stop(f, s, downhill[0])
    raise PrecisionExhausted(f"descent did not settle in {MAX_STEPS} steps", {"map": f.as_dict()})


def _flat_end(f: RationalMapRep, s: BerkPoint, v: Direction) -> BerkPoint:
    """Follow zero-slope directions from s, starting along v, to the end of the flat region."""
    for _ in range(MAX_STEPS):
        nxt = _next_stop(f, s, v)
        back = nxt.direction_to(s)
        ahead = [w for w, m in direction_slopes(f, nxt).items() if m == 0 and w != back]
        if not ahead:
            return nxt
        v, s = ahead[0], nxt
    raise PrecisionExhausted("flat region did not end", {"at": s.as_dict()})


def minresloc_descent(f: RationalMapRep) -> Tuple[BerkPoint, ...]:
    s = descend(f)
    flat = [v for v, m in direction_slopes(f, s).items() if m == 0]
    if len(flat) > 2:
        raise IdentityViolation("minimum locus branches", {"at": s.as_dict()})
    if not flat:
        return (s,)
    ends = [_flat_end(f, s, v) for v in flat]
    if len(ends) == 1:
        ends.append(s)
    return tuple(sorted(unique_points(ends), key=lambda q: (q.depth, q.label())))


def minresloc(f: RationalMapRep, crucial_tree: FiniteTree, nu: TreeMeasure) -> MinResLocus:
    """Minimum locus from descent, required to equal the barycenter of nu_f on the crucial tree."""
    by_descent = minresloc_descent(f)
    by_barycenter = barycenter(nu, crucial_tree)
    if len(by_descent) != len(by_barycenter) or any(a != b for a, b in zip(by_descent, by_barycenter)):
        logger.error(f"descent {by_descent} vs barycenter {by_barycenter}")
        raise IdentityViolation(
            "descent and barycenter disagree",
            {"descent": [s.as_dict() for s in by_descent], "barycenter": [s.as_dict() for s in by_barycenter]},
        )
    low = crucial_at(f, by_descent[0])
    if f.d % 2 == 0 and len(by_descent) != 1:
        raise IdentityViolation("even degree with a segment minimum locus", {"map": f.as_dict()})
    return MinResLocus(by_descent, low, ordres_via_formula(f, by_descent[0]))


def is_potentially_good(f: RationalMapRep, locus: MinResLocus) -> bool:
    good = locus.min_ordres == 0
    if good and local_degree(f, locus.ends[0]) != f.d:
        raise IdentityViolation("zero minimum without full reduction degree", locus.as_dict())
    return good


# ----------------------------------------------------------------------
# Diameter bounds
# ----------------------------------------------------------------------

def _segment_sup(f: RationalMapRep, a: BerkPoint, b: BerkPoint, rho_weight: int, wedge_weight: int) -> Fraction:
    if a == b:
        can = BerkPoint.canonical(f.p)
        return Fraction(rho_weight * rho(a, can) + wedge_weight * wedge_at(f, a))
    combo = path_profile("rho", f, a, b).scale(Fraction(rho_weight)) + path_profile("wedge", f, a, b).scale(Fraction(wedge_weight))
    return Fraction(combo.max_value())


def check_diam_bounds(f: RationalMapRep, locus: MinResLocus, support: List[BerkPoint]) -> Dict[str, Optional[Fraction]]:
    """Slack of both diameter bounds; a negative slack is an IdentityViolation."""
    res = f.res_val
    ends = locus.ends
    lhs = _segment_sup(f, ends[0], ends[-1], f.d - 1, 2)
    out: Dict[str, Optional[Fraction]] = {"minresloc_slack": 2 * res - lhs, "support_slack": None}
    if f.d > 2:
        tree = span(support)
        if tree.is_trivial():
            lhs2 = _segment_sup(f, tree.vertices[0], tree.vertices[0], 1, 1)
        else:
            combo = TreePLF.from_profile(tree, "rho", f) + TreePLF.from_profile(tree, "wedge", f)
            lhs2 = max(Fraction(g.max_value()) for g in combo.edges.values())
        out["support_slack"] = res - lhs2
    for key, slack in out.items():
        if slack is not None and slack < 0:
            raise IdentityViolation(f"diameter bound {key} fails", {"slack": str(slack), "map": f.as_dict()})
    return out


__all__ = [
    "MinResLocus",
    "check_diam_bounds",
    "descend",
    "direction_slopes",
    "is_potentially_good",
    "minresloc",
    "minresloc_descent",
]

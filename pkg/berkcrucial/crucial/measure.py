"""The crucial measure nu_f, the weight function w_f and the hanging-branch case table."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from berkcrucial.crucial.crucial_core import crucial_slope
from berkcrucial.degrees import degree_data, tangent_image
from berkcrucial.errors import IdentityViolation
from berkcrucial.maps import RationalMapRep
from berkcrucial.points import BerkPoint, map_image
from berkcrucial.trees import FiniteTree, TreeMeasure, nu_f_gamma, span, valency_measure

logger = logging.getLogger(__name__)

Weights = List[Tuple[BerkPoint, int]]


def weight_by_cases(f: RationalMapRep, tree: FiniteTree, i: int) -> int:
    """(d - 1) nu_f at vertex i of the crucial tree from degrees alone."""
    s = tree.vertices[i]
    if s.is_type_i:
        return 0
    data = degree_data(f, s)
    directions = tree.directions(i)
    if data.is_fixed:
        moved = sum(1 for v in directions if tangent_image(f, v) != v)
        return data.local_deg - 1 + moved
    return max(0, len(directions) - 2)


def crucial_measure(f: RationalMapRep, tree: FiniteTree) -> Tuple[TreeMeasure, Weights]:
    """nu_f on the crucial tree and w_f = (d - 1) nu_f, checked against the case formula."""
    nu = nu_f_gamma(f, tree)
    refined = tree.refine(nu.support())
    weights: Weights = []
    for i, s in enumerate(refined.vertices):
        atom = nu.mass_at(s) * (f.d - 1)
        expected = weight_by_cases(f, refined, i)
        if atom != expected:
            logger.error(f"weight at {s.label()}: measure gives {atom}, degrees give {expected}")
            raise IdentityViolation(
                "crucial measure disagrees with the weight formula",
                {"at": s.as_dict(), "measure": str(atom), "formula": expected},
            )
        if atom:
            weights.append((s, int(atom)))
    if sum(w for _, w in weights) != f.d - 1:
        raise IdentityViolation("weights do not sum to d - 1", {"weights": [w for _, w in weights]})
    return nu, weights


def support_tree(weights: Weights) -> FiniteTree:
    """Tree spanned by the support of nu_f."""
    return span([s for s, _ in weights])


# ----------------------------------------------------------------------
# Hanging branches
# ----------------------------------------------------------------------

def _branch_case(f: RationalMapRep, s: BerkPoint, branch: FiniteTree) -> str:
    if s.is_type_ii:
        data = degree_data(f, s)
        if data.is_fixed:
            return "A1" if data.reduction.is_identity() else "A2"
        return "B2" if branch.retract(data.image) == s else "B1"
    return "B1"


def extended_tree_prediction(
    f: RationalMapRep, branch: FiniteTree, anchor: BerkPoint
) -> Dict[BerkPoint, Tuple[str, Fraction]]:
    """Case label and predicted (d - 1)(nu_{f,branch} - delta_r(anchor)) at each vertex.

    The branch hangs off the crucial tree at anchor.
    """
    valency = valency_measure(branch)
    foot = TreeMeasure.dirac(branch.retract(anchor))
    out: Dict[BerkPoint, Tuple[str, Fraction]] = {}
    for s in branch.vertices:
        case = _branch_case(f, s, branch)
        base = -2 * valency.mass_at(s)
        if case == "A1":
            value = Fraction(0)
        elif case == "A2":
            value = base + foot.mass_at(s) + 1
        elif case == "B2":
            value = base + 2 * foot.mass_at(s)
        else:
            value = base + foot.mass_at(s)
        out[s] = (case, value)
    return out


def branch_atoms(f: RationalMapRep, branch: FiniteTree, anchor: BerkPoint) -> TreeMeasure:
    """(d - 1)(nu_{f,branch} - delta_r(anchor)) from the crucial Laplacian."""
    nu = nu_f_gamma(f, branch)
    return (nu - TreeMeasure.dirac(branch.retract(anchor))).scale(f.d - 1)


def branch_error_bound(f: RationalMapRep, branch: FiniteTree, crucial: FiniteTree) -> Tuple[Fraction, Fraction]:
    """(|nu_{f,branch} - delta_r(anchor)|(branch), 2 #(ends off the retracted crucial tree)/(d - 1))."""
    image = span([branch.retract(v) for v in crucial.vertices])
    anchor = crucial.retract(branch.vertices[branch.root])
    lhs = (nu_f_gamma(f, branch) - TreeMeasure.dirac(branch.retract(anchor))).total_variation()
    ends = [branch.vertices[i] for i in branch.endpoints()]
    loose = sum(1 for e in ends if not image.contains(e))
    return lhs, Fraction(2 * loose, f.d - 1)


def outside_slope(f: RationalMapRep, s: BerkPoint, crucial: FiniteTree) -> Tuple[Fraction, Fraction]:
    """(slope at s toward the crucial tree, predicted -1/2 or -(d+1)/(2(d-1)))."""
    foot = crucial.retract(s)
    if foot == s:
        raise ValueError(f"{s.label()} lies on the crucial tree")
    computed = crucial_slope(f, s, s.direction_to(foot))
    if map_image(f, s) == s:
        predicted = Fraction(-1, 2)
    else:
        predicted = -Fraction(f.d + 1, 2 * (f.d - 1))
    return computed, predicted


def hanging_direction(tree: FiniteTree, s: BerkPoint) -> Optional[int]:
    """A residue at vertex s whose direction avoids the tree, or None when every F_p direction meets it."""
    i = tree.index_of(s)
    if i is None:
        raise ValueError(f"{s.label()} is not a vertex")
    used = {v.residue for v in tree.directions(i)}
    for r in range(s.p):
        if r not in used:
            return r
    return None


__all__ = [
    "Weights",
    "branch_atoms",
    "branch_error_bound",
    "crucial_measure",
    "extended_tree_prediction",
    "hanging_direction",
    "outside_slope",
    "support_tree",
    "weight_by_cases",
]

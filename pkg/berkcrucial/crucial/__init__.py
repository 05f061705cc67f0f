"""Crucial function, ordRes, crucial tree and measure, MinResLoc."""

from berkcrucial.crucial.crucial_core import (
    conjugation_equivariance,
    crucial_at,
    crucial_slope,
    fixed_set_on_segment,
    ordres_all,
    ordres_closed_form,
    ordres_direct,
    ordres_via_formula,
    slope_range,
    t_potential,
    wedge_at,
)
from berkcrucial.crucial.measure import (
    branch_atoms,
    branch_error_bound,
    crucial_measure,
    extended_tree_prediction,
    hanging_direction,
    outside_slope,
    support_tree,
    weight_by_cases,
)
from berkcrucial.crucial.minres import (
    MinResLocus,
    check_diam_bounds,
    descend,
    direction_slopes,
    is_potentially_good,
    minresloc,
    minresloc_descent,
)
from berkcrucial.crucial.report import CrucialReport, build_report
from berkcrucial.crucial.tree_build import (
    candidate_tree,
    crucial_tree,
    fixed_points,
    gamma_fp_criterion,
    preimage_points,
    repelling_fixed_points,
)

__all__ = [
    "CrucialReport",
    "MinResLocus",
    "branch_atoms",
    "branch_error_bound",
    "build_report",
    "candidate_tree",
    "check_diam_bounds",
    "conjugation_equivariance",
    "crucial_at",
    "crucial_measure",
    "crucial_slope",
    "crucial_tree",
    "descend",
    "direction_slopes",
    "extended_tree_prediction",
    "fixed_points",
    "fixed_set_on_segment",
    "gamma_fp_criterion",
    "hanging_direction",
    "is_potentially_good",
    "minresloc",
    "minresloc_descent",
    "ordres_all",
    "ordres_closed_form",
    "ordres_direct",
    "ordres_via_formula",
    "outside_slope",
    "preimage_points",
    "repelling_fixed_points",
    "slope_range",
    "support_tree",
    "t_potential",
    "wedge_at",
    "weight_by_cases",
]

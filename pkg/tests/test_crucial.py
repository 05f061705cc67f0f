from fractions import Fraction

import pytest

from berkcrucial.crucial import (
    branch_atoms,
    branch_error_bound,
    build_report,
    candidate_tree,
    conjugation_equivariance,
    crucial_at,
    crucial_measure,
    crucial_slope,
    crucial_tree,
    descend,
    direction_slopes,
    extended_tree_prediction,
    fixed_points,
    fixed_set_on_segment,
    gamma_fp_criterion,
    hanging_direction,
    ordres_all,
    outside_slope,
    repelling_fixed_points,
    slope_range,
    support_tree,
    t_potential,
    weight_by_cases,
)
from berkcrucial.errors import UnsupportedExtension
from berkcrucial.maps import RationalMapRep
from berkcrucial.points import BerkPoint, Direction
from berkcrucial.trees import TreeMeasure, span


# ----------------------------------------------------------------------
# Values and ordRes
# ----------------------------------------------------------------------

def test_crucial_values_of_square(square, can, zeta):
    assert crucial_at(square, can) == 0
    assert crucial_at(square, zeta(0, 1)) == Fraction(1, 2)
    assert crucial_at(square, zeta(0, -1)) == Fraction(1, 2)
    assert ordres_all(square, zeta(0, -1)) == (2, 2, 2)


def test_ordres_of_p_square(p_square, can, zeta):
    assert ordres_all(p_square, can) == (2, 2, 2)
    assert ordres_all(p_square, zeta(0, -1)) == (0, 0, 0)
    assert crucial_at(p_square, zeta(0, -1)) == Fraction(-1, 2)


def test_ordres_of_shifted_square(shifted_square, zeta):
    assert ordres_all(shifted_square, zeta(0, Fraction(-1, 2))) == (1, 1, 1)
    assert crucial_at(shifted_square, zeta(0, Fraction(-1, 2))) == Fraction(-3, 4)
    assert t_potential(shifted_square, zeta(0, -1)) == -1


def test_crucial_needs_type_ii_and_degree_two(square):
    with pytest.raises(ValueError):
        crucial_at(square, BerkPoint.type_i(0, 5))
    linear = RationalMapRep.from_coefficients([1, 1], [1], 5)
    with pytest.raises(ValueError):
        crucial_at(linear, BerkPoint.canonical(5))


def test_conjugation_equivariance(square, zeta):
    lhs, rhs = conjugation_equivariance(square, 1, 1, zeta(0, 1))
    assert lhs == rhs == Fraction(1, 2)


# ----------------------------------------------------------------------
# Slopes
# ----------------------------------------------------------------------

def test_slope_range():
    assert slope_range(2) == [Fraction(3, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(-3, 2)]
    assert slope_range(3) == [1, Fraction(1, 2), 0, Fraction(-1, 2), -1]


def test_slopes_at_the_gauss_point(square, can):
    assert crucial_slope(square, can, Direction(can, 0)) == Fraction(1, 2)
    assert crucial_slope(square, can, Direction(can, 1)) == Fraction(1, 2)
    for r in (2, 3, 4):
        assert crucial_slope(square, can, Direction(can, r)) == Fraction(3, 2)
    assert crucial_slope(square, can, Direction(can, None)) == Fraction(1, 2)


def test_slope_up_from_a_bad_gauss_point(shifted_square, can):
    assert crucial_slope(shifted_square, can, Direction(can, None)) == Fraction(-3, 2)


def test_direction_slopes_and_descent(square, shifted_square, can, zeta):
    slopes = direction_slopes(square, can)
    assert len(slopes) == 6
    assert min(slopes.values()) > 0
    assert descend(square) == can
    assert descend(shifted_square) == zeta(0, Fraction(-1, 2))


def test_fixed_set_of_square(square, can, zeta):
    assert fixed_set_on_segment(square, can, zeta(1, 3)) == [(can, zeta(1, 3))]


# ----------------------------------------------------------------------
# Crucial tree and weights
# ----------------------------------------------------------------------

def test_fixed_points_of_square(square):
    points = fixed_points(square)
    assert len(points) == 3
    assert points[-1].is_infinity


def test_crucial_tree_of_square(square, can):
    fixed = fixed_points(square)
    candidate, a0 = candidate_tree(square, fixed)
    assert a0 == 4
    assert can in repelling_fixed_points(square, candidate)
    tree = crucial_tree(square)
    assert len(tree) == 4
    assert tree.contains(can)
    assert hanging_direction(tree, can) == 2


def test_wildly_ramified_fixed_points_are_reported():
    f = RationalMapRep.from_coefficients([-6, 6], [9, 3, 1], 3)
    with pytest.raises(UnsupportedExtension):
        crucial_tree(f)


def test_endpoint_criterion(square, can):
    assert not gamma_fp_criterion(square, can, Direction(can, 0))
    assert gamma_fp_criterion(square, can, Direction(can, 2))


def test_weights_of_square(square, can):
    tree = crucial_tree(square)
    nu, weights = crucial_measure(square, tree)
    assert nu == TreeMeasure.dirac(can)
    assert weights == [(can, 1)]
    assert weight_by_cases(square, tree, tree.index_of(can)) == 1
    assert support_tree(weights).is_trivial()


def test_slope_toward_the_crucial_tree(square, zeta):
    tree = crucial_tree(square)
    assert outside_slope(square, zeta(2, 1), tree) == (Fraction(-3, 2), Fraction(-3, 2))
    with pytest.raises(ValueError):
        outside_slope(square, BerkPoint.canonical(5), tree)


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

def test_report_for_good_reduction(square, can):
    report = build_report(square)
    assert report.locus.ends == (can,)
    assert report.locus.is_point
    assert report.locus.min_ordres == 0
    assert report.potentially_good
    assert report.weights == [(can, 1)]
    assert report.diam == {"minresloc_slack": 0, "support_slack": None}
    dot = report.to_dot()
    assert dot.startswith("graph crucial {")
    assert "w=1" in dot


def test_report_for_potential_good_reduction(p_square, zeta):
    report = build_report(p_square)
    assert report.locus.ends == (zeta(0, -1),)
    assert report.locus.min_ordres == 0
    assert report.potentially_good
    assert report.weights == [(zeta(0, -1), 1)]


def test_report_for_bad_reduction(shifted_square, zeta):
    report = build_report(shifted_square)
    low = zeta(0, Fraction(-1, 2))
    assert report.locus.ends == (low,)
    assert report.locus.min_ordres == 1
    assert report.locus.min_crucial == Fraction(-3, 4)
    assert not report.potentially_good
    assert report.weights == [(low, 1)]
    assert report.diam["minresloc_slack"] == Fraction(15, 2)
    assert report.locus.as_dict()["min"] == "1"


def test_report_with_a_parabolic_fixed_point(square_plus_z):
    can = BerkPoint.canonical(3)
    report = build_report(square_plus_z)
    assert len(report.tree) == 3
    assert report.weights == [(can, 1)]
    assert report.locus.ends == (can,)
    assert report.potentially_good


# ----------------------------------------------------------------------
# Hanging branches
# ----------------------------------------------------------------------

def test_branch_case_table(square, can, zeta):
    branch = span([can, zeta(2, 1)])
    prediction = extended_tree_prediction(square, branch, can)
    assert prediction[can] == ("A2", 1)
    assert prediction[zeta(2, 1)] == ("B1", -1)
    atoms = branch_atoms(square, branch, can)
    assert atoms.mass_at(can) == 1
    assert atoms.mass_at(zeta(2, 1)) == -1


def test_branch_error_bound(square, can, zeta):
    branch = span([can, zeta(2, 1)])
    assert branch_error_bound(square, branch, crucial_tree(square)) == (2, 2)

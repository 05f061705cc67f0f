from fractions import Fraction

import pytest

from berkcrucial.errors import DegenerateMap, DegreeCapExceeded, UnsupportedExtension, UnsupportedResidueExtension
from berkcrucial.maps import (
    Mobius,
    Poly,
    PrecisionPolicy,
    RationalMapRep,
    affine_conjugator,
    certify_clusters,
    chordal_derivative_val,
    conjugate,
    determinant,
    fixed_point_divisor,
    gauss_min,
    iterate,
    newton_polygon,
    padic_roots,
    squarefree_decomposition,
)
from berkcrucial.tower import INF, TowerElem, lift


# ----------------------------------------------------------------------
# Minimal lifts and resultants
# ----------------------------------------------------------------------

def test_resultant_valuations(square, p_square, shifted_square):
    assert square.res_val == 0
    assert p_square.res_val == 2
    assert shifted_square.res_val == 4


def test_bareiss_determinant():
    rows = [[lift(x, 5) for x in row] for row in ([0, 2, 1], [1, 1, 1], [2, 0, 3])]
    assert determinant(rows) == -4
    pi, one = TowerElem.pi(3, 2), TowerElem.one(3)
    assert determinant([[pi, one], [one, pi]]) == 2
    assert determinant([[one, one], [one, one]]) == 0


def test_minimal_lift_is_primitive(shifted_square):
    assert min(c.val() for c in shifted_square.lift.coefficients()) == 0


def test_degenerate_maps_are_rejected():
    with pytest.raises(DegenerateMap):
        RationalMapRep.from_coefficients([0, 1], [0, 1], 5)
    with pytest.raises(DegenerateMap):
        RationalMapRep.from_coefficients([3], [1], 5)


def test_evaluation_and_infinity(square):
    assert square(lift(3, 5)) == 9
    assert square(None) is None


def test_conjugation_reaches_good_reduction(p_square):
    g = conjugate(p_square, affine_conjugator(0, -1, 5))
    assert g.res_val == 0
    assert g.reduction.degree == 2


def test_mobius_affine_action():
    h = Mobius.affine(2, 5, 5)
    assert h(lift(1, 5)) == 7
    assert h(None) is None
    assert (h * h.adjugate()).m00 == h.det()


def test_iterates_and_degree_cap(square):
    assert iterate(square, 2).d == 4
    assert iterate(square, 3)(lift(2, 5)) == 256
    with pytest.raises(DegreeCapExceeded):
        iterate(square, 7)


def test_fixed_point_divisor(square):
    poly, at_infinity = fixed_point_divisor(square)
    assert poly.degree == 2
    assert at_infinity == 1


def test_chordal_derivative(square, p_square):
    assert chordal_derivative_val(square, lift(1, 5)) == 0
    assert chordal_derivative_val(square, lift(0, 5)) == INF
    assert chordal_derivative_val(p_square, lift(1, 5)) == 1


# ----------------------------------------------------------------------
# Reductions
# ----------------------------------------------------------------------

def test_reduction_of_square(square):
    red = square.reduction
    assert red.degree == 2
    assert not red.is_identity()
    assert red.value(2) == 4
    assert red.value(None) is None
    assert red.multiplicity(0) == 2
    assert red.multiplicity(None) == 2
    assert red.preimages(4) == {2: 1, 3: 1}


def test_reduction_can_be_constant(p_square):
    assert p_square.reduction.is_constant()


def test_preimages_over_a_nonsquare_need_an_extension(square):
    with pytest.raises(UnsupportedResidueExtension):
        square.reduction.preimages(2)


def test_fixed_orders_total_degree_plus_one(square):
    assert square.reduction.fixed_orders() == {0: 1, 1: 1, None: 1}


# ----------------------------------------------------------------------
# Newton polygons and roots
# ----------------------------------------------------------------------

def test_newton_polygon():
    assert newton_polygon([-1, 0, 0]) == [(0, 2, Fraction(-1, 2))]
    assert newton_polygon([0, INF, 1]) == [(0, 2, Fraction(-1, 2))]


def test_gauss_min():
    coeffs = Poly([1, 0, 5], 5).coeffs
    assert gauss_min(coeffs, -1) == -1
    assert gauss_min(coeffs, 0) == 0


def test_roots_of_rational_split_polynomial():
    poly = Poly([-4, 0, 1], 5)
    clusters = padic_roots(poly)
    assert sorted(c.center.residue() for c in clusters) == [2, 3]
    assert certify_clusters(poly, clusters)


def test_roots_in_ramified_tower():
    clusters = padic_roots(Poly([Fraction(1, 5), 0, 1], 5))
    assert len(clusters) == 2
    assert all(c.center.val() == Fraction(-1, 2) for c in clusters)
    assert sum(c.mult for c in clusters) == 2


def test_irreducible_residual_needs_an_extension():
    with pytest.raises(UnsupportedResidueExtension):
        padic_roots(Poly([-2, 0, 1], 5))


def test_squarefree_decomposition():
    parts = squarefree_decomposition(Poly([0, 0, -1, 1], 5))
    assert sorted((q.degree, k) for q, k in parts) == [(1, 1), (1, 2)]


def test_repeated_root_keeps_multiplicity():
    clusters = padic_roots(Poly([0, 0, 1], 3))
    assert [c.mult for c in clusters] == [2]


def test_wild_cluster_stops_at_the_ramification_ceiling():
    # (z + 1)^3 + 5 over Q_3: valuations 1/3, 4/9, 13/27, ... never reach the branch point at 1/2
    with pytest.raises(UnsupportedExtension):
        padic_roots(Poly([6, 3, 3, 1], 3))


def test_explicit_ramification_ceiling():
    with pytest.raises(UnsupportedExtension):
        padic_roots(Poly([Fraction(1, 5), 0, 1], 5), PrecisionPolicy(max_ramification=1))
    clusters = padic_roots(Poly([Fraction(1, 5), 0, 1], 5), PrecisionPolicy(max_ramification=2))
    assert len(clusters) == 2

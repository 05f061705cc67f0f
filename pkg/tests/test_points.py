from fractions import Fraction

import pytest

from berkcrucial.errors import UnsupportedPointType
from berkcrucial.maps import Poly
from berkcrucial.points import (
    BerkPoint,
    Direction,
    closed_disk_root_count,
    gauss_val,
    hsia_can,
    join,
    map_image,
    open_disk_root_count,
    rho,
)
from berkcrucial.tower import INF, TowerElem


def test_depth_conventions(can):
    assert can.depth == 0
    assert BerkPoint.type_i(3, 5).depth == INF
    assert BerkPoint.infinity(5).depth == -INF


def test_centers_are_truncated_to_the_radius(zeta):
    assert zeta(7, 1) == zeta(2, 1)
    assert zeta(7, 1) != zeta(2, 2)
    assert hash(zeta(7, 1)) == hash(zeta(2, 1))


def test_type_ii_needs_finite_depth():
    with pytest.raises(UnsupportedPointType):
        BerkPoint.type_ii(0, INF, 5)


def test_distances(can, zeta):
    assert rho(can, zeta(0, 1)) == 1
    assert rho(zeta(1, 1), zeta(0, 1)) == 2
    assert rho(zeta(0, -1), zeta(0, 1)) == 2
    assert rho(can, BerkPoint.infinity(5)) == INF


def test_meet_and_ancestors(can, zeta):
    assert zeta(1, 1).meet(zeta(6, 2)) == 1
    assert zeta(1, 1).is_ancestor_of(zeta(6, 2))
    assert zeta(0, 1).lca(zeta(1, 1)) == can
    assert zeta(0, 3).ancestor_at(1) == zeta(0, 1)


def test_join_is_the_median(can, zeta):
    assert join(zeta(0, 1), zeta(1, 1), can) == can
    assert join(zeta(0, 2), zeta(0, 1), can) == zeta(0, 1)


def test_hsia_kernel_against_can(zeta):
    assert hsia_can(zeta(0, 1), zeta(0, 2)) == 1
    assert hsia_can(zeta(0, 1), zeta(1, 1)) == 0
    assert hsia_can(BerkPoint.type_i(0, 5), BerkPoint.type_i(0, 5)) == INF


def test_directions(can, zeta):
    assert can.direction_to(zeta(7, 1)) == Direction(can, 2)
    assert can.direction_to(BerkPoint.infinity(5)).is_up
    assert Direction(can, 2).point() == zeta(2, 1)
    assert Direction(can, None).point() == zeta(0, -1)
    assert Direction(can, 0).contains(zeta(0, 3))
    assert not Direction(can, 0).contains(zeta(1, 3))


def test_gauss_valuations(can, zeta):
    poly = Poly([1, 0, 5], 5)
    assert gauss_val(poly, can) == 0
    assert gauss_val(poly, zeta(0, -1)) == -1
    assert gauss_val(Poly([-1, 1], 5), BerkPoint.type_i(1, 5)) == INF


def test_disk_root_counts():
    taylor = Poly([-1, 0, 1], 5).coeffs
    assert closed_disk_root_count(taylor, 0) == 2
    assert open_disk_root_count(taylor, 0) == 0


def test_images(square, p_square, shifted_square, can, zeta):
    assert map_image(square, zeta(0, 1)) == zeta(0, 2)
    assert map_image(square, can) == can
    assert map_image(p_square, can) == zeta(0, 1)
    assert map_image(p_square, zeta(0, -1)) == zeta(0, -1)
    assert map_image(shifted_square, can) == zeta(Fraction(1, 5), 0)
    assert map_image(shifted_square, zeta(0, Fraction(-1, 2))) == zeta(0, -1)


def test_type_i_images(square):
    assert map_image(square, BerkPoint.type_i(2, 5)) == BerkPoint.type_i(4, 5)
    assert map_image(square, BerkPoint.infinity(5)).is_infinity


def test_serialization_shape(zeta):
    doc = zeta(Fraction(1, 5), 0).as_dict()
    assert doc["type"] == "II"
    assert doc["t"] == "0/1"
    assert doc["center"]["coeffs"] == ["1/5"]
    assert BerkPoint.infinity(5).as_dict() == {"type": "I", "center": "inf"}
    assert zeta(0, 1).label() == "zeta(0;1)"


def test_ramified_centers(zeta):
    half = zeta(TowerElem.pi(5, 2), Fraction(1, 2))
    assert half.t == Fraction(1, 2)
    assert rho(half, zeta(0, 0)) == Fraction(1, 2)

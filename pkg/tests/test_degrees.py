import pytest

from berkcrucial.degrees import (
    degree_data,
    directional_degree,
    first_identification,
    fixed_count_in,
    fixed_reduction_orders,
    local_degree,
    potential_slope,
    preimage_directions,
    pullback_mass,
    second_identification,
    surplus_degree,
    tangent_image,
)
from berkcrucial.points import Direction


def test_degrees_at_the_gauss_point(square, can):
    data = degree_data(square, can)
    assert data.local_deg == 2
    assert data.is_fixed
    assert data.other_surplus == 0
    assert data.record(Direction(can, 0)).m == 2
    assert data.directional_sum(4) == 2
    assert set(data.as_dict()) == {"at", "image", "d", "local_deg", "reduction", "directions", "other_surplus"}


def test_record_rejects_foreign_directions(square, can, zeta):
    with pytest.raises(ValueError):
        degree_data(square, can).record(Direction(zeta(0, 1), 0))


def test_per_direction_queries(square, can):
    assert local_degree(square, can) == 2
    assert tangent_image(square, Direction(can, 2)).residue == 4
    assert directional_degree(square, Direction(can, 1)) == 1
    assert surplus_degree(square, Direction(can, 0)) == 0
    assert preimage_directions(square, can, 4) == {2: 1, 3: 1}


def test_tangent_map_of_a_moving_point(p_square, can, zeta):
    assert local_degree(p_square, can) == 2
    assert tangent_image(p_square, Direction(can, 0)) == Direction(zeta(0, 1), 0)


def test_pullback_masses(square, can, zeta):
    up = Direction(zeta(0, 1), None)
    assert pullback_mass(square, can, up) == 2
    assert potential_slope(square, can, up) == 0
    assert pullback_mass(square, can, Direction(zeta(0, 1), 0)) == 0
    assert potential_slope(square, can, Direction(zeta(0, 1), 0)) == 0


def test_fixed_points_by_direction(square, can):
    assert fixed_count_in(square, Direction(can, 0)) == 1
    assert fixed_count_in(square, Direction(can, 1)) == 1
    assert fixed_count_in(square, Direction(can, None)) == 1
    assert fixed_count_in(square, Direction(can, 2)) == 0
    assert fixed_reduction_orders(square, can) == {0: 1, 1: 1, None: 1}


def test_first_identification(square, can):
    counts = first_identification(square, can)
    assert counts[0] == (1, 1)
    assert all(found == predicted for found, predicted in counts.values())


def test_second_identification(square, can, zeta):
    checks = second_identification(square, zeta(0, 1))
    assert all(meets == predicted for meets, predicted in checks.values())
    with pytest.raises(ValueError):
        second_identification(square, can)
    with pytest.raises(ValueError):
        fixed_reduction_orders(square, zeta(0, 1))

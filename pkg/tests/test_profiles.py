from fractions import Fraction

import pytest

from berkcrucial.points import (
    PiecewiseLinear,
    VerticalSegment,
    edge_profile,
    path_profile,
    profile_frame,
    segment_profile,
    write_profile_csv,
)
from berkcrucial.tower import INF, lift


# ----------------------------------------------------------------------
# PiecewiseLinear
# ----------------------------------------------------------------------

def test_lower_envelope_of_two_lines():
    g = PiecewiseLinear.lower_envelope([(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))], -2, 3)
    assert g(3) == 1
    assert g(-2) == -2
    assert g.breakpoints() == [1]
    assert g.slope_left(1) == 1
    assert g.slope_right(1) == 0


def test_zero_set_of_a_line():
    g = PiecewiseLinear.from_line((Fraction(-1), Fraction(1)), 0, 3)
    assert g.zero_set() == [(1, 1)]
    assert PiecewiseLinear.constant(Fraction(0), 0, 3).zero_set() == [(0, 3)]


def test_rays_take_their_limits():
    g = PiecewiseLinear.from_line((Fraction(0), Fraction(1)), -INF, Fraction(0))
    assert g(-INF) == -INF
    assert g.max_value() == 0
    assert g.min_value() == -INF


def test_reparametrization_flips_direction():
    g = PiecewiseLinear.from_line((Fraction(0), Fraction(1)), 0, 2).reparametrized(-1, Fraction(0))
    assert (g.lo, g.hi) == (-2, 0)
    assert g(-1) == 1


def test_arithmetic_keeps_exact_values():
    a = PiecewiseLinear.from_line((Fraction(0), Fraction(1)), 0, 2)
    b = PiecewiseLinear.constant(Fraction(1), 0, 2)
    assert (a - b)(2) == 1
    assert a.minimum(b).breakpoints() == [1]
    assert a.scale(Fraction(1, 2))(2) == 1


def test_concat_requires_continuity():
    left = PiecewiseLinear.constant(Fraction(0), 0, 1)
    right = PiecewiseLinear.constant(Fraction(1), 1, 2)
    with pytest.raises(ValueError):
        PiecewiseLinear.concat([left, right])


# ----------------------------------------------------------------------
# Profiles along segments
# ----------------------------------------------------------------------

def test_crucial_profile_of_square_below_can(square, can, zeta):
    profile = edge_profile("crucial", square, can, zeta(0, 2))
    assert profile(2) == 1
    assert profile.slopes() == [Fraction(1, 2)]


def test_potential_of_square_vanishes(square, can, zeta):
    profile = edge_profile("potential", square, can, zeta(0, 2))
    assert profile.max_value() == 0
    assert profile.min_value() == 0


def test_fixed_segment_of_square(square, can, zeta):
    assert edge_profile("fixed", square, can, zeta(1, 3)).zero_set() == [(0, 3)]
    assert edge_profile("wedge", square, can, zeta(1, 3)).max_value() == 0


def test_wedge_toward_a_moved_residue(square, can, zeta):
    profile = edge_profile("wedge", square, can, zeta(2, 1))
    assert profile(1) == 1


def test_crucial_profile_of_shifted_square_has_its_kink(shifted_square):
    seg = VerticalSegment(lift(0, 5), Fraction(-1), Fraction(0))
    profile = segment_profile("crucial", shifted_square, seg)
    assert profile.breakpoints() == [Fraction(-1, 2)]
    assert profile(Fraction(-1, 2)) == Fraction(-3, 4)
    assert profile(0) == 0
    assert profile(-1) == Fraction(-1, 2)


def test_t_potential_is_never_positive(shifted_square, zeta):
    profile = edge_profile("tpotential", shifted_square, zeta(0, -2), zeta(0, 2))
    assert profile.max_value() == 0
    assert profile(-1) == -1


def test_path_profile_is_measured_from_the_start(square, can, zeta):
    profile = path_profile("rho", square, zeta(0, 1), zeta(1, 1))
    assert profile(0) == 1
    assert profile(2) == 1
    assert profile(1) == 0
    up = path_profile("crucial", square, can, zeta(0, -1))
    assert up.slope_right(0) == Fraction(1, 2)


def test_profile_frame(square, can, zeta):
    frame = profile_frame(path_profile("rho", square, can, zeta(0, 2)))
    assert list(frame.columns) == ["t", "value"]
    assert frame.iloc[-1].tolist() == ["2/1", "2/1"]


def test_unknown_profile_kind(square, can, zeta):
    with pytest.raises(ValueError):
        edge_profile("bogus", square, can, zeta(0, 1))


def test_profile_csv(square, can, zeta, tmp_path):
    path = tmp_path / "rho.csv"
    write_profile_csv(path_profile("rho", square, can, zeta(0, 2)), str(path))
    assert path.read_text().splitlines() == ["t,value", "0/1,0/1", "2/1,2/1"]

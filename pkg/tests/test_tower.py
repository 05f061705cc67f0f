from fractions import Fraction

import pytest

from berkcrucial.errors import NotIntegral
from berkcrucial.tower import (
    INF,
    TowerContext,
    TowerElem,
    ext_str,
    lift,
    required_e,
    truncate_rational,
    uniformizer_of_valuation,
    vp,
)


def test_vp_of_rationals():
    assert vp(50, 5) == 2
    assert vp(Fraction(1, 25), 5) == -2
    assert vp(Fraction(7, 3), 5) == 0


def test_uniformizer_squares_to_p():
    pi = TowerElem.pi(5, 2)
    assert pi.val() == Fraction(1, 2)
    assert pi * pi == 5


def test_inverse_of_uniformizer():
    pi = TowerElem.pi(5, 2)
    inv = pi.inverse()
    assert inv.val() == Fraction(-1, 2)
    assert pi * inv == 1


def test_mixed_towers_embed_into_common_index():
    total = TowerElem.pi(5, 2) + TowerElem.pi(5, 3)
    assert total.e == 6
    assert total.val() == Fraction(1, 3)


def test_residue_of_unit():
    assert TowerElem.rational(Fraction(7, 2), 5).residue() == 1
    assert TowerElem.rational(10, 5).residue() == 0


def test_residue_rejects_negative_valuation():
    with pytest.raises(NotIntegral):
        TowerElem.rational(Fraction(1, 5), 5).residue()


def test_truncation_keeps_low_digits():
    assert TowerElem.rational(7, 5).truncate(1) == 2
    assert TowerElem.rational(1, 5).truncate(0).is_zero()
    assert truncate_rational(Fraction(1, 5), 5, 0) == Fraction(1, 5)


def test_equal_elements_hash_alike_across_towers():
    a = TowerElem.rational(3, 5, 1)
    b = TowerElem.rational(3, 5, 2)
    assert a == b
    assert hash(a) == hash(b)
    assert lift(3, 5, 2).compressed().e == 1


def test_uniformizer_of_valuation():
    b = uniformizer_of_valuation(Fraction(3, 2), 5, 2)
    assert b.val() == Fraction(3, 2)
    with pytest.raises(ValueError):
        uniformizer_of_valuation(Fraction(1, 3), 5, 2)


def test_required_e():
    assert required_e(1, Fraction(1, 2)) == 2
    assert required_e(2, Fraction(1, 3)) == 6
    assert required_e(2, 4) == 2


def test_ext_str():
    assert ext_str(INF) == "inf"
    assert ext_str(-INF) == "-inf"
    assert ext_str(Fraction(-1, 2)) == "-1/2"


def test_context_needs_a_prime():
    with pytest.raises(ValueError):
        TowerContext(4)
    assert TowerContext(5, 2).embeds_into(TowerContext(5, 4))


def test_leading_digit_is_multiplicative():
    x = TowerElem(5, 2, [Fraction(15), Fraction(2)])
    y = TowerElem.rational(Fraction(3, 25), 5)
    assert x.leading_digit() == 2
    assert y.leading_digit() == 3
    assert (x * y).leading_digit() == 1


def test_approx_inverse_reaches_the_requested_precision():
    unit = TowerElem(3, 2, [Fraction(1), Fraction(1)])
    assert (unit * unit.approx_inverse(10) - 1).val() >= 10
    z = TowerElem(3, 2, [Fraction(6), Fraction(1)])
    w = z.approx_inverse(7)
    assert w.val() == Fraction(-1, 2)
    assert (z * w - 1).val() >= 7
    with pytest.raises(ZeroDivisionError):
        TowerElem.zero(3).approx_inverse(4)

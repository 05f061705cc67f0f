from fractions import Fraction

import pandas as pd
import pytest

from berkcrucial.equidist import (
    EquidistRecord,
    c_constant_bound,
    default_test_functions,
    default_test_tree,
    equidist_grid,
    mu_integral,
    potential_sup,
    quantitative_check,
    retracted_pullback,
    tent_function,
    write_equidist_csv,
)
from berkcrucial.errors import DegreeCapExceeded
from berkcrucial.maps import RationalMapRep
from berkcrucial.points import BerkPoint
from berkcrucial.trees import TreeMeasure, laplacian, span


@pytest.fixture
def test_tree(square):
    return default_test_tree(square)


@pytest.fixture
def tent(test_tree, can):
    return tent_function(test_tree, can)


def test_default_tree_and_functions(test_tree, can, zeta):
    assert len(test_tree) == 4
    assert test_tree.contains(zeta(0, -1))
    labels = [label for label, _ in default_test_functions(test_tree, count=2)]
    assert labels == ["tent@zeta(0;-1)", "tent@zeta(0;0)"]


def test_tent_function(can, zeta):
    phi = tent_function(span([zeta(0, 1), zeta(1, 1)]), can)
    assert phi.value_at(can) == 1
    assert phi.value_at(zeta(0, Fraction(1, 2))) == Fraction(1, 2)
    assert phi.value_at(zeta(1, 1)) == 0
    assert laplacian(phi).total_variation() == 4


def test_pullback_of_the_gauss_point(square, test_tree, can):
    assert retracted_pullback(square, 1, can, test_tree) == TreeMeasure.dirac(can, 2)


def test_constant_bound(square, shifted_square, can):
    assert c_constant_bound(square, can) == 0
    assert c_constant_bound(shifted_square, can) == 4


def test_mu_integral_for_good_reduction(square, tent):
    assert mu_integral(square, tent, 2) == (1, 0)


def test_quantitative_check(square, tent):
    record = quantitative_check(square, 1, tent, label="tent", tail=1)
    assert record.ok
    assert record.nu_integral == record.mu_value == 1
    assert record.mu_err == 0


def test_degree_cap(square, tent):
    with pytest.raises(DegreeCapExceeded):
        quantitative_check(square, 3, tent, cap=4)


def test_record_rows():
    record = EquidistRecord("x", 1, Fraction(1), Fraction(1), Fraction(0), Fraction(1, 2), Fraction(1))
    assert record.margin == Fraction(1, 2)
    row = record.as_row()
    assert row["margin"] == "1/2"
    assert row["ok"] is True
    assert row["lhs_upper"] == "1/2"


def test_grid_and_csv(square, tent, tmp_path):
    frame = equidist_grid(square, [1], [("tent", tent)], workers=2, tail=1)
    assert len(frame) == 1
    assert bool(frame.loc[0, "ok"])
    assert frame.loc[0, "nu_integral"] == "1/1"
    path = tmp_path / "equidist.csv"
    write_equidist_csv(frame, str(path))
    assert list(pd.read_csv(path)["label"]) == ["tent"]


def test_exact_potential_supremum(square, can):
    assert potential_sup(square, can) == 0


def test_bracket_shrinks_by_d_per_iterate(shifted_square):
    functions = default_test_functions(default_test_tree(shifted_square))
    assert [label for label, _ in functions] == ["tent@zeta(0;-1)", "tent@zeta(0;-1/2)", "tent@zeta(0;0)"]
    for label, phi in functions:
        records = [quantitative_check(shifted_square, n, phi, label=label) for n in (1, 2, 3)]
        assert all(r.ok for r in records)
        for before, after in zip(records, records[1:]):
            assert after.lhs_upper <= before.lhs_upper / shifted_square.d


def test_scaled_square_matches_its_limit():
    # 168 | p - 1 so the fixed points and the preimages of 1 split for n <= 3
    p = 337
    f = RationalMapRep.from_coefficients([0, 0, p], [1], p)
    top = BerkPoint.type_ii(0, -1, p)
    functions = default_test_functions(default_test_tree(f))
    assert len(functions) == 3
    for label, phi in functions:
        for n in (1, 2, 3):
            record = quantitative_check(f, n, phi, label=label)
            assert record.ok
            assert record.nu_integral == phi.value_at(top)
            assert abs(record.nu_integral - record.mu_value) <= record.mu_err

from fractions import Fraction

import pytest

from berkcrucial.errors import InvalidMeasure
from berkcrucial.points import Direction
from berkcrucial.trees import (
    FiniteTree,
    TreeMeasure,
    TreePLF,
    barycenter,
    laplacian,
    nu_f_gamma,
    retracted_pullback_measure,
    span,
    valency_measure,
)


@pytest.fixture
def fork(zeta):
    return span([zeta(0, 1), zeta(1, 1)])


def test_span_adds_the_branch_point(fork, can):
    assert len(fork) == 3
    assert fork.vertices[fork.root] == can
    assert fork.valency(fork.root) == 2
    assert len(fork.endpoints()) == 2


def test_vertex_set_must_be_lca_closed(zeta):
    with pytest.raises(ValueError):
        FiniteTree([zeta(0, 1), zeta(1, 1)])


def test_retraction(fork, can, zeta):
    assert fork.retract(zeta(2, 1)) == can
    assert fork.retract(zeta(0, 3)) == zeta(0, 1)
    assert fork.contains(zeta(0, Fraction(1, 2)))
    assert fork.locate(zeta(0, Fraction(1, 2))) == ("edge", fork.index_of(zeta(0, 1)))
    assert fork.locate(can) == ("vertex", fork.root)
    with pytest.raises(ValueError):
        fork.locate(zeta(2, 1))


def test_directions_and_branches(fork, can, zeta):
    dirs = fork.directions(fork.root)
    assert set(d.residue for d in dirs) == {0, 1}
    assert fork.branch_toward(fork.root, Direction(can, 0)) == [fork.index_of(zeta(0, 1))]
    leaf = fork.index_of(zeta(1, 1))
    up = fork.branch_toward(leaf, Direction(zeta(1, 1), None))
    assert sorted(up) == sorted([fork.root, fork.index_of(zeta(0, 1))])


def test_serialization(fork):
    doc = fork.as_dict()
    assert doc["lengths"] == ["1/1", "1/1"]
    assert len(doc["edges"]) == 2
    dot = fork.to_dot({fork.root: "root"}, name="t")
    assert dot.startswith("graph t {")
    assert "root" in dot


# ----------------------------------------------------------------------
# Measures
# ----------------------------------------------------------------------

def test_measure_arithmetic(can, zeta):
    nu = TreeMeasure.dirac(can) + TreeMeasure.dirac(zeta(0, 3), Fraction(1, 2)) + TreeMeasure.dirac(can)
    assert nu.total() == Fraction(5, 2)
    assert nu.mass_at(can) == 2
    assert nu.mass_in(Direction(can, 0)) == Fraction(1, 2)
    assert (nu - nu).atoms == []
    assert nu.scale(-1).total_variation() == Fraction(5, 2)


def test_valency_measure_is_a_probability(zeta):
    tripod = span([zeta(0, 1), zeta(1, 1), zeta(2, 1)])
    mu = valency_measure(tripod)
    assert mu.total() == 1
    assert mu.mass_at(tripod.vertices[tripod.root]) == Fraction(-1, 2)


def test_valency_measure_of_a_point(can):
    with pytest.raises(InvalidMeasure):
        valency_measure(span([can]))


def test_barycenter(fork, can, zeta):
    assert barycenter(TreeMeasure.dirac(can), fork) == (can,)
    split = TreeMeasure([(zeta(0, 1), Fraction(1, 2)), (zeta(1, 1), Fraction(1, 2))])
    assert barycenter(split, fork) == (zeta(0, 1), zeta(1, 1))
    with pytest.raises(InvalidMeasure):
        barycenter(TreeMeasure.dirac(can, 2), fork)


# ----------------------------------------------------------------------
# Functions and Laplacians
# ----------------------------------------------------------------------

def test_laplacian_of_distance(square, fork, can, zeta):
    phi = TreePLF.from_profile(fork, "rho", square)
    lap = laplacian(phi)
    assert lap.mass_at(can) == 2
    assert lap.mass_at(zeta(0, 1)) == -1
    assert lap.total() == 0


def test_laplacian_commutes_with_retraction(square, fork, can, zeta):
    phi = TreePLF.from_profile(fork, "rho", square)
    small = span([can, zeta(0, 1)])
    assert laplacian(phi.restrict_to(small)) == laplacian(phi).retracted(small)


def test_integration_retracts_first(square, fork, zeta):
    phi = TreePLF.from_profile(fork, "rho", square)
    assert phi.integrate(TreeMeasure.dirac(zeta(2, 3))) == 0
    assert phi.integrate(TreeMeasure.dirac(zeta(0, 5))) == 1
    assert phi.value_at(zeta(1, Fraction(1, 2))) == Fraction(1, 2)
    assert phi.sup_abs() == 1


def test_pullback_of_gauss_point(square, fork, can):
    assert retracted_pullback_measure(square, fork, can) == TreeMeasure.dirac(can, 2)


def test_crucial_measure_relative_to_a_fork(square, fork, can):
    assert nu_f_gamma(square, fork) == TreeMeasure.dirac(can)


def test_crucial_measure_on_a_point(square, can):
    assert nu_f_gamma(square, span([can])) == TreeMeasure.dirac(can)


def test_measure_annotations_in_dot(fork, can):
    notes = TreeMeasure.dirac(can, Fraction(1, 2)).vertex_annotations(fork)
    assert notes == {fork.root: "mass 1/2"}
    assert "mass 1/2" in fork.to_dot(notes)

"""Rational maps over the tower: polynomials, lifts, reductions and roots."""

from berkcrucial.maps.maps_core import (
    DEFAULT_DEGREE_CAP,
    BiForm,
    Mobius,
    RationalMapRep,
    affine_conjugator,
    chordal_derivative_val,
    conjugate,
    determinant,
    fixed_point_divisor,
    iterate,
    minimalize,
    reduce_mod_m,
    resultant,
)
from berkcrucial.maps.poly import Poly, gauss_min, newton_polygon
from berkcrucial.maps.reduction import ReducedMap, Residue
from berkcrucial.maps.roots import PrecisionPolicy, RootCluster, certify_clusters, padic_roots, squarefree_decomposition

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "BiForm",
    "Mobius",
    "RationalMapRep",
    "Poly",
    "ReducedMap",
    "Residue",
    "PrecisionPolicy",
    "RootCluster",
    "affine_conjugator",
    "certify_clusters",
    "chordal_derivative_val",
    "conjugate",
    "determinant",
    "fixed_point_divisor",
    "gauss_min",
    "iterate",
    "minimalize",
    "newton_polygon",
    "padic_roots",
    "reduce_mod_m",
    "resultant",
    "squarefree_decomposition",
]

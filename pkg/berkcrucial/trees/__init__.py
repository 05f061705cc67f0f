"""Finite subtrees, measures on them and tree Laplacians."""

from berkcrucial.trees.laplacian import TreePLF, laplacian, nu_f_gamma, retracted_pullback_measure
from berkcrucial.trees.measures import TreeMeasure, barycenter, valency_measure
from berkcrucial.trees.tree_core import FiniteTree, span, unique_points

__all__ = [
    "FiniteTree",
    "TreeMeasure",
    "TreePLF",
    "barycenter",
    "laplacian",
    "nu_f_gamma",
    "retracted_pullback_measure",
    "span",
    "unique_points",
    "valency_measure",
]

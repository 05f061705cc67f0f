"""Quantitative equidistribution lab."""

from berkcrucial.equidist.equidist_core import (
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

__all__ = [
    "EquidistRecord",
    "c_constant_bound",
    "default_test_functions",
    "default_test_tree",
    "equidist_grid",
    "mu_integral",
    "potential_sup",
    "quantitative_check",
    "retracted_pullback",
    "tent_function",
    "write_equidist_csv",
]

"""Exact valued tower Q(pi), pi^e = p."""

from berkcrucial.tower.tower_core import (
    INF,
    ExtValue,
    TowerContext,
    TowerElem,
    common_e,
    ext_str,
    lift,
    required_e,
    residue_of_rational,
    truncate_rational,
    uniformizer_of_valuation,
    vp,
)

__all__ = [
    "INF",
    "ExtValue",
    "TowerContext",
    "TowerElem",
    "common_e",
    "ext_str",
    "lift",
    "required_e",
    "residue_of_rational",
    "truncate_rational",
    "uniformizer_of_valuation",
    "vp",
]

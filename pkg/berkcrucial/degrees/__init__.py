"""Local, directional and surplus degrees; pullback masses."""

from berkcrucial.degrees.degrees_core import (
    DegreeData,
    DirectionRecord,
    chart_map,
    degree_data,
    directional_degree,
    first_identification,
    fixed_count_in,
    fixed_reduction_orders,
    image_base,
    local_degree,
    potential_slope,
    preimage_directions,
    pullback_mass,
    roots_in,
    second_identification,
    surplus_degree,
    tangent_image,
)

__all__ = [
    "DegreeData",
    "DirectionRecord",
    "chart_map",
    "degree_data",
    "directional_degree",
    "first_identification",
    "fixed_count_in",
    "fixed_reduction_orders",
    "image_base",
    "local_degree",
    "potential_slope",
    "preimage_directions",
    "pullback_mass",
    "roots_in",
    "second_identification",
    "surplus_degree",
    "tangent_image",
]

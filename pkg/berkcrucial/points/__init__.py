"""Berkovich points, seminorms, images and exact profiles along segments."""

from berkcrucial.points.plf import PiecewiseLinear, gauss_profile
from berkcrucial.points.points_core import (
    BerkPoint,
    Direction,
    closed_disk_root_count,
    gauss_val,
    hsia_can,
    image_center,
    join,
    map_image,
    open_disk_root_count,
    rho,
    seminorm_val,
)
from berkcrucial.points.profiles import (
    PROFILE_KINDS,
    VerticalSegment,
    crucial_profile,
    displacement_profile,
    edge_profile,
    image_pieces,
    path_profile,
    pl_min,
    potential_profile,
    profile_frame,
    rho_profile,
    segment_profile,
    t_potential_profile,
    wedge_profile,
    write_profile_csv,
)

__all__ = [
    "PROFILE_KINDS",
    "BerkPoint",
    "Direction",
    "PiecewiseLinear",
    "VerticalSegment",
    "closed_disk_root_count",
    "crucial_profile",
    "displacement_profile",
    "edge_profile",
    "gauss_profile",
    "gauss_val",
    "hsia_can",
    "image_center",
    "image_pieces",
    "join",
    "map_image",
    "open_disk_root_count",
    "path_profile",
    "pl_min",
    "potential_profile",
    "profile_frame",
    "rho",
    "rho_profile",
    "segment_profile",
    "seminorm_val",
    "t_potential_profile",
    "wedge_profile",
    "write_profile_csv",
]

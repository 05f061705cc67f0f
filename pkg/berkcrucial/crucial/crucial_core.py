"""The crucial function, ordRes along three independent routes, and its slopes.

Values are in log-p units. For S = zeta(a; t):

    T_F(S)     = -min(gv F0, gv F1) + d min(0, t, v(a))
    Crucial(S) = rho(S, S_can)/2 + (rho(S, f(S) ^_can S) + T_F(S))/(d - 1)
    ordRes(S)  = 2d(d - 1) Crucial(S) + v(Res F)
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from berkcrucial.degrees import pullback_mass
from berkcrucial.errors import IdentityViolation
from berkcrucial.maps import RationalMapRep, affine_conjugator, conjugate
from berkcrucial.points import (
    BerkPoint,
    Direction,
    edge_profile,
    gauss_val,
    join,
    map_image,
    path_profile,
    rho,
)
from berkcrucial.tower import INF, ExtValue, TowerElem, lift

logger = logging.getLogger(__name__)


def _require_nonlinear(f: RationalMapRep) -> None:
    if f.d < 2:
        raise ValueError("crucial function needs degree at least 2")


def t_potential(f: RationalMapRep, s: BerkPoint) -> ExtValue:
    """T_F(s) for the minimal lift; zero at S_can and never positive."""
    gv = min(gauss_val(f.denominator, s), gauss_val(f.numerator, s))
    center_val = s.center.val()
    return -gv + f.d * min(Fraction(0), s.t, center_val)


def wedge_at(f: RationalMapRep, s: BerkPoint, base: Optional[BerkPoint] = None) -> ExtValue:
    """rho(s, f(s) ^_base s)."""
    base = base or BerkPoint.canonical(f.p)
    return rho(s, join(s, map_image(f, s), base))


def crucial_at(f: RationalMapRep, s: BerkPoint) -> Fraction:
    _require_nonlinear(f)
    if not s.is_type_ii:
        raise ValueError("crucial_at takes a type II point")
    can = BerkPoint.canonical(f.p)
    value = rho(s, can) / 2 + (wedge_at(f, s, can) + t_potential(f, s)) / (f.d - 1)
    return Fraction(value)


# ----------------------------------------------------------------------
# ordRes
# ----------------------------------------------------------------------

def ordres_direct(f: RationalMapRep, s: BerkPoint) -> Fraction:
    """v(Res) of a minimal lift of h^-1 o f o h with h(S_can) = s."""
    return conjugate(f, affine_conjugator(s.center, s.t, f.p)).res_val


def ordres_via_formula(f: RationalMapRep, s: BerkPoint) -> Fraction:
    d = f.d
    return 2 * d * (d - 1) * crucial_at(f, s) + f.res_val


def ordres_closed_form(f: RationalMapRep, s: BerkPoint) -> Fraction:
    """v(Res F) + d(d - 1) t - 2d min(gv F0, gv(F1 - a F0) - t)."""
    d, a, t = f.d, s.center, s.t
    g0 = gauss_val(f.denominator, s)
    g1 = gauss_val(f.numerator - f.denominator * a, s)
    return Fraction(f.res_val + d * (d - 1) * t - 2 * d * min(g0, g1 - t))


def ordres_all(f: RationalMapRep, s: BerkPoint) -> Tuple[Fraction, Fraction, Fraction]:
    """All three routes; raises IdentityViolation unless they agree."""
    values = (ordres_direct(f, s), ordres_via_formula(f, s), ordres_closed_form(f, s))
    if len(set(values)) != 1:
        logger.error(f"ordRes disagreement at {s.label()}: {values}")
        raise IdentityViolation(
            "ordRes routes disagree",
            {"map": f.as_dict(), "at": s.as_dict(), "values": [str(v) for v in values]},
        )
    return values


# ----------------------------------------------------------------------
# Slopes
# ----------------------------------------------------------------------

def crucial_slope(f: RationalMapRep, s: BerkPoint, v: Direction, check: bool = True) -> Fraction:
    """Slope of the crucial function leaving s along v.

    Read off the exact profile; with check set it is compared with
    1/2 + (wedge slope - (f^* delta_s)(U_v))/(d - 1), the wedge taken at base s.
    """
    _require_nonlinear(f)
    probe = v.point(1)
    slope = path_profile("crucial", f, s, probe).slope_right(0)
    if check:
        wedge = path_profile("wedge", f, s, probe, base=s).slope_right(0)
        other = Fraction(1, 2) + (wedge - pullback_mass(f, s, v)) / Fraction(f.d - 1)
        if other != slope:
            raise IdentityViolation(
                "crucial slope disagrees with the wedge and mass formula",
                {"at": s.as_dict(), "direction": v.as_dict(), "profile": str(slope), "formula": str(other)},
            )
    return slope


def slope_range(d: int) -> List[Fraction]:
    """Every value a crucial slope can take in degree d."""
    return [Fraction(d + 1 - 2 * m, 2 * (d - 1)) for m in range(d + 2)]


def conjugation_equivariance(
    f: RationalMapRep, a: Union[int, Fraction, TowerElem], t: Union[int, Fraction], s: BerkPoint
) -> Tuple[Fraction, Fraction]:
    """(Crucial_f(h(s)) - Crucial_f(h(S_can)), Crucial_g(s)) for h = h_{a,b}, g = h^-1 o f o h."""
    h = affine_conjugator(a, t, f.p)
    g = conjugate(f, h)
    moved = BerkPoint.type_ii(lift(a, f.p) + h.m11 * s.center, Fraction(t) + s.t, f.p)
    origin = BerkPoint.type_ii(a, t, f.p)
    return crucial_at(f, moved) - crucial_at(f, origin), crucial_at(g, s)


def fixed_set_on_segment(f: RationalMapRep, top: BerkPoint, bottom: BerkPoint) -> List[Tuple[BerkPoint, BerkPoint]]:
    """Fixed points of f on [top, bottom] as closed pieces (equal ends for isolated points)."""
    profile = edge_profile("fixed", f, top, bottom)
    out = []
    for lo, hi in profile.zero_set():
        a = top if lo == top.t else (bottom if lo == INF else bottom.ancestor_at(lo))
        b = bottom if hi == INF or hi == bottom.t else bottom.ancestor_at(hi)
        out.append((a, b))
    return out


__all__ = [
    "t_potential",
    "wedge_at",
    "crucial_at",
    "ordres_direct",
    "ordres_via_formula",
    "ordres_closed_form",
    "ordres_all",
    "crucial_slope",
    "slope_range",
    "conjugation_equivariance",
    "fixed_set_on_segment",
]

"""Exact profiles of wedge, potential and crucial functions along segments.

A vertical segment is {zeta(c; tau) : lo <= tau <= hi} for a fixed center c;
every edge of a tree rooted at infinity is one. Along it Gauss valuations are
lower envelopes of lines, the image point is zeta(c*, t*(tau)) with c*
constant between breakpoints of the denominator envelope, and so every
profile below is an exact piecewise-linear function of tau.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple, Union

import pandas as pd

from berkcrucial.errors import PrecisionExhausted
from berkcrucial.maps import RationalMapRep, affine_conjugator, conjugate
from berkcrucial.points.plf import PiecewiseLinear, gauss_profile
from berkcrucial.points.points_core import BerkPoint, rho
from berkcrucial.tower import INF, ExtValue, TowerElem, ext_str

logger = logging.getLogger(__name__)

PROFILE_KINDS = ("wedge", "potential", "crucial", "rho", "tpotential", "fixed")

Term = Union[PiecewiseLinear, Fraction, int, float]


@dataclass(frozen=True)
class VerticalSegment:
    """zeta(center; tau) for lo <= tau <= hi; cap bounds the exact part below a cluster."""

    center: TowerElem
    lo: ExtValue
    hi: ExtValue
    cap: ExtValue = INF

    @classmethod
    def between(cls, top: BerkPoint, bottom: BerkPoint) -> "VerticalSegment":
        if not top.is_ancestor_of(bottom):
            raise ValueError(f"{top.label()} is not above {bottom.label()}")
        if bottom.is_infinity:
            raise ValueError("segment bottom cannot be infinity")
        cap = bottom.err if bottom.is_type_i else INF
        return cls(bottom.center, top.t, bottom.t, cap)

    @property
    def p(self) -> int:
        return self.center.p

    def point(self, tau: ExtValue) -> BerkPoint:
        if tau == INF:
            return BerkPoint.type_i(self.center, self.p, self.cap)
        if tau == -INF:
            return BerkPoint.infinity(self.p)
        return BerkPoint.type_ii(self.center, tau, self.p)


# ----------------------------------------------------------------------
# PL helpers
# ----------------------------------------------------------------------

def _const(c: Fraction, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    return PiecewiseLinear.constant(Fraction(c), lo, hi)


def _identity(lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    return PiecewiseLinear.from_line((Fraction(0), Fraction(1)), lo, hi)


def pl_min(lo: ExtValue, hi: ExtValue, *terms: Term) -> PiecewiseLinear:
    """Minimum of PL functions and constants; infinite constants drop out."""
    result: Optional[PiecewiseLinear] = None
    for term in terms:
        if not isinstance(term, PiecewiseLinear):
            if term == INF:
                continue
            term = _const(Fraction(term), lo, hi)
        result = term if result is None else result.minimum(term)
    if result is None:
        raise ValueError("minimum of nothing finite")
    return result


def _sample(lo: ExtValue, hi: ExtValue) -> Fraction:
    """A point strictly inside (lo, hi)."""
    if lo == -INF and hi == INF:
        return Fraction(0)
    if lo == -INF:
        return Fraction(hi) - 1
    if hi == INF:
        return Fraction(lo) + 1
    return (Fraction(lo) + Fraction(hi)) / 2


def _split(lo: ExtValue, hi: ExtValue, cuts: List[Fraction]) -> List[Tuple[ExtValue, ExtValue]]:
    pts = [lo] + sorted(c for c in set(cuts) if lo < c < hi) + [hi]
    return [(a, b) for a, b in zip(pts, pts[1:]) if a < b] or [(lo, hi)]


# ----------------------------------------------------------------------
# Elementary profiles
# ----------------------------------------------------------------------

def meet_profile(seg: VerticalSegment, other: BerkPoint, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """tau -> meet(zeta(c; tau), other)."""
    if other.is_infinity:
        raise ValueError("meet with infinity is -inf everywhere")
    d = (seg.center - other.center).val()
    return pl_min(lo, hi, _identity(lo, hi), other.t, d)


def rho_profile(seg: VerticalSegment, base: BerkPoint, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """tau -> rho(zeta(c; tau), base) for a type II base."""
    return _identity(lo, hi) + base.t - 2 * meet_profile(seg, base, lo, hi)


def norm_profile(seg: VerticalSegment, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """tau -> -log_p ||(1, z)|| at zeta(c; tau) = min(0, tau, v(c))."""
    return pl_min(lo, hi, 0, _identity(lo, hi), seg.center.val())


def lift_profile(f: RationalMapRep, seg: VerticalSegment, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """tau -> min(gauss_val(F0), gauss_val(F1))."""
    parts = [
        gauss_profile(form.taylor(seg.center), lo, hi)
        for form in (f.lift.f0, f.lift.f1)
        if not form.is_zero()
    ]
    return pl_min(lo, hi, *parts)


def image_pieces(f: RationalMapRep, seg: VerticalSegment, lo: ExtValue, hi: ExtValue) -> List[Tuple[ExtValue, ExtValue, TowerElem, PiecewiseLinear]]:
    """Pieces (a, b, c*, t*) with f(zeta(c; tau)) = zeta(c*, t*(tau)) on [a, b]."""
    num, den = f.numerator, f.denominator
    nt = num.taylor(seg.center)
    dt = den.taylor(seg.center)
    den_env = gauss_profile(dt, lo, hi)
    pieces = []
    for a, b in _split(lo, hi, den_env.breakpoints()):
        x = _sample(a, b) if a < b else Fraction(a)
        best_j = min(
            (j for j, c in enumerate(dt) if not c.is_zero()),
            key=lambda j: (dt[j].val() + j * x, j),
        )
        n_j = nt[best_j] if best_j < len(nt) else TowerElem.zero(f.p)
        c_star = n_j / dt[best_j]
        residual = num - den * c_star
        t_star = gauss_profile(residual.taylor(seg.center), a, b) - den_env.restrict(a, b)
        pieces.append((a, b, c_star, t_star))
    return pieces


# ----------------------------------------------------------------------
# Profiles of the potential functions
# ----------------------------------------------------------------------

def t_potential_profile(f: RationalMapRep, seg: VerticalSegment, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """T_F along the segment: -min(gv F0, gv F1) + d min(0, tau, v(c))."""
    return -lift_profile(f, seg, lo, hi) + f.d * norm_profile(seg, lo, hi)


def wedge_profile(f: RationalMapRep, seg: VerticalSegment, base: BerkPoint, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """tau -> rho(S, f(S) ^_base S) = tau - meet(S, fS) - meet(S, base) + meet(fS, base)."""
    u2 = meet_profile(seg, base, lo, hi)
    parts = []
    for a, b, c_star, t_star in image_pieces(f, seg, lo, hi):
        tau = _identity(a, b)
        u1 = pl_min(a, b, tau, t_star, (seg.center - c_star).val())
        u3 = pl_min(a, b, t_star, base.t, (c_star - base.center).val())
        parts.append(tau - u1 - u2.restrict(a, b) + u3)
    return PiecewiseLinear.concat(parts).simplified()


def displacement_profile(f: RationalMapRep, seg: VerticalSegment, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """tau -> rho(S, f(S)); its zero set is the fixed locus on the segment."""
    parts = []
    for a, b, c_star, t_star in image_pieces(f, seg, lo, hi):
        tau = _identity(a, b)
        u1 = pl_min(a, b, tau, t_star, (seg.center - c_star).val())
        parts.append(tau + t_star - 2 * u1)
    return PiecewiseLinear.concat(parts).simplified()


def potential_profile(f: RationalMapRep, seg: VerticalSegment, base: BerkPoint, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """G_base(S) = int rho(base, S ^_base .) d(f^* delta_base), by conjugating base to S_can."""
    h = affine_conjugator(base.center, base.t, f.p)
    g = conjugate(f, h)
    moved = VerticalSegment((seg.center - base.center) / h.m11, _shift(seg.lo, -base.t), _shift(seg.hi, -base.t))
    inner = -t_potential_profile(g, moved, _shift(lo, -base.t), _shift(hi, -base.t))
    return inner.reparametrized(1, base.t)


def crucial_profile(f: RationalMapRep, seg: VerticalSegment, lo: ExtValue, hi: ExtValue) -> PiecewiseLinear:
    """rho(S, S_can)/2 + (rho(S, f(S) ^_can S) + T_F(S))/(d - 1)."""
    can = BerkPoint.canonical(f.p)
    half_rho = rho_profile(seg, can, lo, hi) / 2
    tail = (wedge_profile(f, seg, can, lo, hi) + t_potential_profile(f, seg, lo, hi)) / (f.d - 1)
    return (half_rho + tail).simplified()


def _shift(x: ExtValue, by: Fraction) -> ExtValue:
    return x if abs(x) == INF else x + by


# ----------------------------------------------------------------------
# Segment entry point
# ----------------------------------------------------------------------

def _builder(kind: str, f: RationalMapRep, base: Optional[BerkPoint]) -> Callable[[VerticalSegment, ExtValue, ExtValue], PiecewiseLinear]:
    can = BerkPoint.canonical(f.p)
    base = base or can
    if kind == "wedge":
        return lambda seg, lo, hi: wedge_profile(f, seg, base, lo, hi)
    if kind == "potential":
        return lambda seg, lo, hi: potential_profile(f, seg, base, lo, hi)
    if kind == "crucial":
        return lambda seg, lo, hi: crucial_profile(f, seg, lo, hi)
    if kind == "rho":
        return lambda seg, lo, hi: rho_profile(seg, base, lo, hi)
    if kind == "tpotential":
        return lambda seg, lo, hi: t_potential_profile(f, seg, lo, hi)
    if kind == "fixed":
        return lambda seg, lo, hi: displacement_profile(f, seg, lo, hi)
    raise ValueError(f"unknown profile kind {kind!r}; expected one of {PROFILE_KINDS}")


def segment_profile(kind: str, f: RationalMapRep, seg: VerticalSegment, base: Optional[BerkPoint] = None) -> PiecewiseLinear:
    """Profile on the whole segment; below a cluster the last exact slope is carried to the end."""
    build = _builder(kind, f, base)
    if seg.cap >= seg.hi:
        return build(seg, seg.lo, seg.hi)
    if seg.cap <= seg.lo:
        raise PrecisionExhausted("cluster radius above the segment top", {"cap": ext_str(seg.cap), "lo": ext_str(seg.lo)})
    exact = build(seg, seg.lo, seg.cap)
    top = Fraction(seg.lo) if seg.lo != -INF else min(Fraction(0), Fraction(seg.cap))
    threshold = (top + Fraction(seg.cap)) / 2
    late = [x for x in exact.breakpoints() if x >= threshold]
    if late:
        raise PrecisionExhausted(
            f"profile breakpoint at {late[-1]} too close to the cluster radius {seg.cap}",
            {"center": seg.center.as_dict(), "cap": ext_str(seg.cap)},
        )
    exact = exact.simplified()
    knots = [k for k in exact.knots if k < seg.cap] or [exact.knots[0]]
    return PiecewiseLinear(seg.lo, seg.hi, knots, [exact(k) for k in knots], exact.left_slope, exact.slope_left(seg.cap))


def edge_profile(kind: str, f: RationalMapRep, top: BerkPoint, bottom: BerkPoint, base: Optional[BerkPoint] = None) -> PiecewiseLinear:
    """Profile along [top, bottom] (top above bottom) as a function of the depth tau."""
    return segment_profile(kind, f, VerticalSegment.between(top, bottom), base)


def path_profile(kind: str, f: RationalMapRep, start: BerkPoint, end: BerkPoint, base: Optional[BerkPoint] = None) -> PiecewiseLinear:
    """Profile along the geodesic from a type II start, parametrized by distance from start."""
    if not start.is_type_ii:
        raise ValueError("path profiles start at a type II point")
    top = start.lca(end)
    pieces = []
    up_len = Fraction(0)
    if top != start:
        up = edge_profile(kind, f, top, start, base)
        up_len = start.t - top.t
        pieces.append(up.reparametrized(-1, start.t))
    if top != end:
        down = edge_profile(kind, f, top, end, base)
        pieces.append(down.reparametrized(1, up_len - top.t))
    if not pieces:
        seg = VerticalSegment(start.center, start.t, start.t)
        return segment_profile(kind, f, seg, base).reparametrized(1, -start.t)
    return PiecewiseLinear.concat(pieces).simplified()


def profile_frame(profile: PiecewiseLinear) -> pd.DataFrame:
    """Knot table (t, value) of a profile, rays reported by their limits."""
    rows = [(ext_str(x), ext_str(v)) for x, v in profile.as_rows()]
    return pd.DataFrame(rows, columns=["t", "value"])


def write_profile_csv(profile: PiecewiseLinear, path: str) -> None:
    profile_frame(profile).to_csv(path, index=False)


__all__ = [
    "PROFILE_KINDS",
    "VerticalSegment",
    "pl_min",
    "meet_profile",
    "rho_profile",
    "lift_profile",
    "image_pieces",
    "t_potential_profile",
    "wedge_profile",
    "displacement_profile",
    "potential_profile",
    "crucial_profile",
    "segment_profile",
    "edge_profile",
    "path_profile",
    "profile_frame",
    "write_profile_csv",
]

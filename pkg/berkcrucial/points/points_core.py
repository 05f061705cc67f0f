"""Points of the Berkovich line, Hsia kernels, Gauss seminorms and images.

Every point is read in the tree rooted at infinity: a type II point
zeta(a; t) is the closed disk {v(z - a) >= t} and t is its depth; a finite
type I point has depth +inf and infinity has depth -inf. Two points meet at
depth min(s, t, v(a - b)), which yields least common ancestors, distances and
medians without leaving exact arithmetic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from berkcrucial.errors import CertificationFailed, PrecisionExhausted, UnsupportedPointType
from berkcrucial.maps import Poly, RationalMapRep, RootCluster, gauss_min
from berkcrucial.tower import INF, ExtValue, TowerElem, ext_str, lift, required_e, uniformizer_of_valuation

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, TowerElem]


@dataclass(frozen=True, eq=False)
class BerkPoint:
    """Type I (err certifies a root cluster) or type II point of P^1."""

    kind: str
    p: int
    center: Optional[TowerElem]
    t: ExtValue
    err: ExtValue = INF

    # ------------------------------------------------------------------
    @classmethod
    def type_ii(cls, center: Scalar, t: Union[int, Fraction], p: int) -> "BerkPoint":
        if t == INF or t == -INF:
            raise UnsupportedPointType("type II points need a finite rational depth", {"t": str(t)})
        if not isinstance(t, (int, Fraction)):
            raise UnsupportedPointType("irrational radii are not representable", {"t": str(t)})
        t = Fraction(t)
        center = lift(center, p).truncate(t).compressed()
        return cls("II", p, center, t)

    @classmethod
    def type_i(cls, center: Scalar, p: int, err: ExtValue = INF) -> "BerkPoint":
        return cls("I", p, lift(center, p).compressed(), INF, err)

    @classmethod
    def infinity(cls, p: int) -> "BerkPoint":
        return cls("I", p, None, -INF)

    @classmethod
    def canonical(cls, p: int) -> "BerkPoint":
        return cls.type_ii(0, 0, p)

    @classmethod
    def from_cluster(cls, cluster: RootCluster) -> "BerkPoint":
        return cls.type_i(cluster.center, cluster.center.p, cluster.err_t)

    # ------------------------------------------------------------------
    @property
    def is_type_i(self) -> bool:
        return self.kind == "I"

    @property
    def is_type_ii(self) -> bool:
        return self.kind == "II"

    @property
    def is_infinity(self) -> bool:
        return self.center is None

    @property
    def depth(self) -> ExtValue:
        return self.t

    @property
    def exact(self) -> bool:
        return self.err == INF

    def uniformizer(self) -> TowerElem:
        """An element b with v(b) = t; the chart z = a + b w sends S_can here."""
        self._require_type_ii()
        return uniformizer_of_valuation(self.t, self.p, required_e(1, self.t))

    def _require_type_ii(self) -> None:
        if not self.is_type_ii:
            raise UnsupportedPointType("operation needs a type II point", self.as_dict())

    # ------------------------------------------------------------------
    def meet(self, other: "BerkPoint") -> ExtValue:
        """Depth of the least common ancestor."""
        if self.is_infinity or other.is_infinity:
            return -INF
        s, t = self.t, other.t
        cap = min(s, t)
        d = (self.center - other.center).val()
        bound = min(self.err, other.err)
        if d < bound:
            return min(cap, d)
        if self.is_type_i and other.is_type_i:
            return INF
        # the true distance is only known to be >= bound
        if cap <= bound:
            return cap
        raise PrecisionExhausted("cluster radius too coarse to place point", {"a": self.as_dict(), "b": other.as_dict()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BerkPoint) or other.p != self.p or other.kind != self.kind:
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        if self.is_type_ii:
            return self.t == other.t and self.meet(other) == self.t
        return self.meet(other) == INF

    def __hash__(self) -> int:
        if self.is_type_i:
            return hash(("I", self.p, self.is_infinity))
        return hash(("II", self.p, self.t, self.center.coeffs, self.center.e))

    def is_ancestor_of(self, other: "BerkPoint") -> bool:
        """True when self lies on the path from other up to infinity."""
        if self.is_infinity:
            return True
        if self.is_type_i:
            return self == other
        return self.meet(other) == self.t

    def ancestor_at(self, tau: ExtValue) -> "BerkPoint":
        if tau == -INF:
            return BerkPoint.infinity(self.p)
        if tau > self.t:
            raise ValueError(f"depth {tau} below the point")
        if tau == self.t:
            return self
        return BerkPoint.type_ii(self.center, tau, self.p)

    def lca(self, other: "BerkPoint") -> "BerkPoint":
        u = self.meet(other)
        if u == -INF:
            return BerkPoint.infinity(self.p)
        if u == INF:
            return self
        if u == self.t:
            return self
        if u == other.t:
            return other
        return BerkPoint.type_ii(self.center, u, self.p)

    # ------------------------------------------------------------------
    def residue_of(self, x: TowerElem, err: ExtValue = INF) -> int:
        """Residue of (x - a)/b for x in the closed disk of self."""
        if err <= self.t:
            raise PrecisionExhausted("cluster radius does not resolve the direction", {"at": self.as_dict()})
        return ((x - self.center) / self.uniformizer()).residue()

    def direction_to(self, other: "BerkPoint") -> "Direction":
        if other == self:
            raise ValueError("no direction from a point to itself")
        if self.is_type_i:
            return Direction(self, None)
        if other.is_infinity or not self.is_ancestor_of(other):
            return Direction(self, None)
        return Direction(self, self.residue_of(other.center, other.err if other.is_type_i else INF))

    # ------------------------------------------------------------------
    def as_dict(self) -> dict:
        if self.is_infinity:
            return {"type": "I", "center": "inf"}
        out = {"type": self.kind, "center": self.center.as_dict(), "t": ext_str(self.t)}
        if self.is_type_i:
            out["err"] = ext_str(self.err)
        return out

    def label(self) -> str:
        if self.is_infinity:
            return "inf"
        c = self.center
        body = str(c.coeffs[0]) if c.is_rational() else repr(c)
        if self.is_type_i:
            return body
        return f"zeta({body};{self.t})"

    def __repr__(self) -> str:
        return f"BerkPoint({self.label()})"


@dataclass(frozen=True)
class Direction:
    """Tangent direction at base; residue None means the upward direction."""

    base: BerkPoint
    residue: Optional[int]

    @property
    def is_up(self) -> bool:
        return self.residue is None

    def center(self) -> Optional[TowerElem]:
        """A center in the residue class, None for the upward class."""
        if self.residue is None:
            return None
        return self.base.center + self.base.uniformizer() * self.residue

    def point(self, delta: Fraction = Fraction(1)) -> BerkPoint:
        """A type II point inside the direction at hyperbolic distance delta."""
        b = self.base
        if self.residue is None:
            return BerkPoint.type_ii(b.center, b.t - delta, b.p)
        return BerkPoint.type_ii(self.center(), b.t + delta, b.p)

    def contains(self, x: BerkPoint) -> bool:
        if x == self.base:
            return False
        return self.base.direction_to(x) == self

    def as_dict(self) -> dict:
        return {"base": self.base.as_dict(), "residue": "inf" if self.residue is None else self.residue}


# ----------------------------------------------------------------------
# Metric and kernels
# ----------------------------------------------------------------------

def rho(s: BerkPoint, s2: BerkPoint) -> ExtValue:
    """Hyperbolic distance in log-p units (+inf to type I points)."""
    if s == s2:
        return Fraction(0)
    if s.is_type_i or s2.is_type_i:
        return INF
    u = s.meet(s2)
    return s.t + s2.t - 2 * u


def join(a: BerkPoint, b: BerkPoint, base: BerkPoint) -> BerkPoint:
    """The median a ^_base b: common point of the three pairwise paths."""
    pairs = [(a.meet(b), a, b), (a.meet(base), a, base), (b.meet(base), b, base)]
    u, x, y = max(pairs, key=lambda item: item[0])
    return x.lca(y)


def hsia_can(s: BerkPoint, s2: BerkPoint) -> ExtValue:
    """-log_p [s, s2]_can, the distance from S_can to s ^_can s2."""
    can = BerkPoint.canonical(s.p)
    j = join(s, s2, can)
    if j.is_type_i:
        return INF
    return rho(can, j)


# ----------------------------------------------------------------------
# Seminorms
# ----------------------------------------------------------------------

def gauss_val(poly: Poly, s: BerkPoint) -> ExtValue:
    """-log_p |poly|_s."""
    if s.is_infinity:
        raise UnsupportedPointType("Gauss seminorm at infinity", s.as_dict())
    if s.is_type_i:
        if not s.exact:
            raise UnsupportedPointType("seminorm at an inexact type I point", s.as_dict())
        return poly(s.center).val()
    return gauss_min(poly.taylor(s.center), s.t)


def seminorm_val(num: Poly, den: Poly, s: BerkPoint) -> ExtValue:
    if num.is_zero():
        return INF
    return gauss_val(num, s) - gauss_val(den, s)


# ----------------------------------------------------------------------
# Images
# ----------------------------------------------------------------------

def _image_candidate(f: RationalMapRep, s: BerkPoint, center: TowerElem) -> Tuple[TowerElem, ExtValue]:
    num, den = f.numerator, f.denominator
    t_star = seminorm_val(num - den * center, den, s)
    return center, t_star


def image_center(f: RationalMapRep, s: BerkPoint) -> TowerElem:
    """n_j / d_j at the index minimizing val(d_j) + j t."""
    nt = f.numerator.taylor(s.center)
    dt = f.denominator.taylor(s.center)
    best_j, best = None, INF
    for j, c in enumerate(dt):
        if c.is_zero():
            continue
        score = c.val() + j * s.t
        if best_j is None or score < best:
            best_j, best = j, score
    n_j = nt[best_j] if best_j < len(nt) else TowerElem.zero(f.p)
    return n_j / dt[best_j]


def _certify(f: RationalMapRep, s: BerkPoint, image: BerkPoint) -> bool:
    num, den = f.numerator, f.denominator
    p = f.p
    probes = [lift(0, p), lift(1, p), image.center, image.center + p]
    for c in probes:
        if seminorm_val(Poly([-c, 1], p), Poly.constant(1, p), image) != seminorm_val(num - den * c, den, s):
            return False
    # infinity chart: |1/z| on the image against |den/num| on the source
    if -gauss_val(Poly.z(p), image) != seminorm_val(den, num, s):
        return False
    return True


def map_image(f: RationalMapRep, s: BerkPoint) -> BerkPoint:
    """f(s), exact for type II points and exact type I points."""
    p = f.p
    if s.is_infinity:
        value = f(None)
        return BerkPoint.infinity(p) if value is None else BerkPoint.type_i(value, p)
    if s.is_type_i:
        if s.exact:
            value = f(s.center)
            return BerkPoint.infinity(p) if value is None else BerkPoint.type_i(value, p)
        return _cluster_image(f, s)
    center, t_star = _image_candidate(f, s, image_center(f, s))
    image = BerkPoint.type_ii(center, t_star, p)
    if _certify(f, s, image):
        return image
    logger.warning(f"image of {s.label()} failed certification; retrying from a second center")
    alt = f(s.center + s.uniformizer())
    if alt is not None:
        center, t_star = _image_candidate(f, s, alt)
        image = BerkPoint.type_ii(center, t_star, p)
        if _certify(f, s, image):
            return image
    raise CertificationFailed("image point failed the seminorm identity", {"map": f.as_dict(), "at": s.as_dict()})


def _cluster_image(f: RationalMapRep, s: BerkPoint) -> BerkPoint:
    disk = BerkPoint.type_ii(s.center, s.err, s.p)
    den_taylor = f.denominator.taylor(s.center)
    poles = closed_disk_root_count(den_taylor, s.err)
    value = f(s.center)
    if poles or value is None:
        raise PrecisionExhausted("cluster disk meets a pole", {"at": s.as_dict()})
    image_disk = map_image(f, disk)
    return BerkPoint.type_i(value, s.p, image_disk.t)


def closed_disk_root_count(taylor, t: ExtValue) -> int:
    """Number of roots with v(z - c) >= t (largest minimizing index)."""
    best, idx = INF, 0
    for j, c in enumerate(taylor):
        if c.is_zero():
            continue
        score = c.val() + j * t
        if score <= best:
            best, idx = score, j
    return idx


def open_disk_root_count(taylor, t: ExtValue) -> int:
    """Number of roots with v(z - c) > t (smallest minimizing index)."""
    best, idx = INF, 0
    for j, c in enumerate(taylor):
        if c.is_zero():
            continue
        score = c.val() + j * t
        if score < best:
            best, idx = score, j
    return idx


__all__ = [
    "BerkPoint",
    "Direction",
    "rho",
    "join",
    "hsia_can",
    "gauss_val",
    "seminorm_val",
    "image_center",
    "map_image",
    "open_disk_root_count",
    "closed_disk_root_count",
]

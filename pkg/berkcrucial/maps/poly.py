"""Univariate polynomials with tower coefficients and their Newton polygons."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from berkcrucial.tower import INF, ExtValue, TowerElem, lift

Coefficient = Union[int, Fraction, TowerElem]


class Poly:
    """Polynomial sum_j c_j z^j over Q(pi); coefficients low to high."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Sequence[Coefficient], p: int) -> None:
        items = [c if isinstance(c, TowerElem) else TowerElem.rational(Fraction(c), p) for c in coeffs]
        while items and items[-1].is_zero():
            items.pop()
        self.p = p
        self.coeffs: Tuple[TowerElem, ...] = tuple(items)

    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls([], p)

    @classmethod
    def constant(cls, c: Coefficient, p: int) -> "Poly":
        return cls([c], p)

    @classmethod
    def z(cls, p: int) -> "Poly":
        return cls([0, 1], p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> TowerElem:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, j: int) -> TowerElem:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return TowerElem.zero(self.p)

    def padded(self, n: int) -> List[TowerElem]:
        """Coefficients 0..n (formal degree n)."""
        if self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds formal degree {n}")
        return [self.coeff(j) for j in range(n + 1)]

    # ------------------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(j) + other.coeff(j) for j in range(n)], self.p)

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(j) - other.coeff(j) for j in range(n)], self.p)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.p)

    def __mul__(self, other: Union["Poly", Coefficient]) -> "Poly":
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs], self.p)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.p)
        out = [TowerElem.zero(self.p)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(out, self.p)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly.constant(1, self.p)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x: Coefficient) -> TowerElem:
        x = lift(x, self.p)
        acc = TowerElem.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    # ------------------------------------------------------------------
    def derivative(self) -> "Poly":
        return Poly([c * j for j, c in enumerate(self.coeffs)][1:], self.p)

    def shift(self, a: Coefficient) -> "Poly":
        """P(z + a), computed by Horner in K[z]."""
        linear = Poly([a, 1], self.p)
        acc = Poly.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * linear + Poly.constant(c, self.p)
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.constant(c, self.p)
        return acc

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [TowerElem.zero(self.p)] * max(len(rem) - other.degree, 1)
        inv_lc = other.lc().inverse()
        while len(rem) - 1 >= other.degree and rem:
            shift = len(rem) - 1 - other.degree
            factor = rem[-1] * inv_lc
            quot[shift] = factor
            for j, c in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - factor * c
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(quot, self.p), Poly(rem, self.p)

    def exact_quo(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        return self * self.lc().inverse()

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def taylor(self, a: Coefficient) -> List[TowerElem]:
        """Coefficients of P recentered at a."""
        if lift(a, self.p).is_zero():
            return list(self.coeffs)
        return list(self.shift(a).coeffs)

    def vals(self) -> List[ExtValue]:
        return [c.val() for c in self.coeffs]


def newton_polygon(vals: Sequence[ExtValue]) -> List[Tuple[int, int, Fraction]]:
    """Lower convex hull of (j, vals[j]); returns (j_start, j_end, root valuation).

    A segment from (i, a) to (k, b) accounts for k - i roots of valuation
    (a - b) / (k - i). Infinite entries (zero coefficients) are skipped.
    """
    pts = [(j, Fraction(v)) for j, v in enumerate(vals) if v != INF]
    hull: List[Tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return [
        (i, k, (a - b) / (k - i))
        for (i, a), (k, b) in zip(hull, hull[1:])
    ]


def gauss_min(coeffs: Sequence[TowerElem], t: Union[Fraction, int]) -> ExtValue:
    """min_j (val(c_j) + j t): the Newton-polygon evaluation at radius p^-t."""
    best: ExtValue = INF
    for j, c in enumerate(coeffs):
        v = c.val()
        if v != INF:
            best = min(best, v + j * Fraction(t))
    return best


__all__ = ["Poly", "newton_polygon", "gauss_min"]

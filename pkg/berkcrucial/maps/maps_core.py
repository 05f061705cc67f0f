"""Homogeneous lifts, resultants, conjugation and iteration of rational maps.

Coordinate convention: a point (p0, p1) of K^2 projects to z = p1 / p0, so a
lift F = (F0, F1) represents f(z) = F1(1, z) / F0(1, z). A form of degree d is
stored as the polynomial F(1, z) together with its formal degree d.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

from berkcrucial.errors import DegenerateMap, DegreeCapExceeded
from berkcrucial.maps.poly import Poly
from berkcrucial.maps.reduction import ReducedMap
from berkcrucial.tower import (
    INF,
    ExtValue,
    TowerElem,
    common_e,
    lift,
    required_e,
    uniformizer_of_valuation,
)

logger = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 64


def determinant(rows: List[List[TowerElem]]) -> TowerElem:
    """Exact determinant by fraction-free Bareiss elimination over Q(pi)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return TowerElem.one(2)
    p = m[0][0].p
    negate = False
    prev = TowerElem.one(p)
    for k in range(n - 1):
        pivot = next((r for r in range(k, n) if not m[r][k].is_zero()), None)
        if pivot is None:
            return TowerElem.zero(p)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            negate = not negate
        piv = m[k][k]
        # m[r][c] now holds a (k + 2)-minor of the input
        inv = None if prev.is_rational() else prev.inverse()
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                minor = m[r][c] * piv - m[r][k] * m[k][c]
                m[r][c] = minor / prev.coeffs[0] if inv is None else minor * inv
        prev = piv
    det = m[n - 1][n - 1]
    return -det if negate else det


@dataclass(frozen=True)
class BiForm:
    """A pair of binary forms (F0, F1) of common degree d."""

    d: int
    f0: Poly
    f1: Poly

    def __post_init__(self) -> None:
        if self.f0.degree > self.d or self.f1.degree > self.d:
            raise ValueError(f"form exceeds declared degree {self.d}")

    @property
    def p(self) -> int:
        return self.f0.p

    def coefficients(self) -> List[TowerElem]:
        return self.f0.padded(self.d) + self.f1.padded(self.d)

    def min_val(self) -> ExtValue:
        return min(c.val() for c in self.coefficients())

    def scale(self, c: Union[TowerElem, int, Fraction]) -> "BiForm":
        return BiForm(self.d, self.f0 * c, self.f1 * c)

    def sylvester(self) -> List[List[TowerElem]]:
        d = self.d
        a, b = self.f0.padded(d), self.f1.padded(d)
        zero = TowerElem.zero(self.p)
        rows = []
        for coeffs in (a, b):
            for i in range(d):
                row = [zero] * (2 * d)
                for j, c in enumerate(coeffs):
                    row[i + j] = c
                rows.append(row)
        return rows

    def compose(self, inner: "BiForm") -> "BiForm":
        """Lift of f o g: F_i(G0, G1)."""
        d, k = self.d, inner.d
        powers0 = [Poly.constant(1, self.p)]
        powers1 = [Poly.constant(1, self.p)]
        for _ in range(d):
            powers0.append(powers0[-1] * inner.f0)
            powers1.append(powers1[-1] * inner.f1)

        def substitute(form: Poly) -> Poly:
            acc = Poly.zero(self.p)
            for j, c in enumerate(form.padded(d)):
                if not c.is_zero():
                    acc = acc + powers0[d - j] * powers1[j] * c
            return acc

        return BiForm(d * k, substitute(self.f0), substitute(self.f1))


def resultant(form: BiForm) -> TowerElem:
    """Homogeneous resultant via the 2d x 2d Sylvester determinant."""
    return determinant(form.sylvester())


def minimalize(form: BiForm) -> Tuple[BiForm, Fraction]:
    """Scale so the minimal coefficient valuation is 0; returns the shift."""
    mu = form.min_val()
    if mu == INF:
        raise DegenerateMap("zero lift", {})
    mu = Fraction(mu)
    if mu == 0:
        return form, mu
    e = required_e(common_e(form.coefficients()), mu)
    return form.scale(uniformizer_of_valuation(mu, form.p, e).inverse()), mu


@dataclass(frozen=True)
class Mobius:
    """Matrix [[m00, m01], [m10, m11]] acting on (p0, p1) column vectors."""

    m00: TowerElem
    m01: TowerElem
    m10: TowerElem
    m11: TowerElem

    @classmethod
    def of(cls, entries: Sequence[Union[TowerElem, int, Fraction]], p: int) -> "Mobius":
        vals = [lift(x, p) for x in entries]
        mob = cls(*vals)
        if mob.det().is_zero():
            raise ValueError("singular Mobius matrix")
        return mob

    @classmethod
    def affine(cls, a: Union[TowerElem, int, Fraction], b: Union[TowerElem, int, Fraction], p: int) -> "Mobius":
        """H_{a,b}(p0, p1) = (p0, a p0 + b p1), realizing z -> a + b z."""
        return cls.of([1, 0, a, b], p)

    @classmethod
    def identity(cls, p: int) -> "Mobius":
        return cls.of([1, 0, 0, 1], p)

    @property
    def p(self) -> int:
        return self.m00.p

    def det(self) -> TowerElem:
        return self.m00 * self.m11 - self.m01 * self.m10

    def adjugate(self) -> "Mobius":
        return Mobius(self.m11, -self.m01, -self.m10, self.m00)

    def __mul__(self, other: "Mobius") -> "Mobius":
        return Mobius(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    def as_form(self) -> BiForm:
        return BiForm(1, Poly([self.m00, self.m01], self.p), Poly([self.m10, self.m11], self.p))

    def apply_linear(self, form: BiForm) -> BiForm:
        """(m00 F0 + m01 F1, m10 F0 + m11 F1)."""
        return BiForm(
            form.d,
            form.f0 * self.m00 + form.f1 * self.m01,
            form.f0 * self.m10 + form.f1 * self.m11,
        )

    def __call__(self, z: Optional[TowerElem]) -> Optional[TowerElem]:
        """Action on P^1(K); None is infinity."""
        if z is None:
            num, den = self.m11, self.m01
        else:
            num, den = self.m10 + self.m11 * z, self.m00 + self.m01 * z
        return None if den.is_zero() else num / den


class RationalMapRep:
    """A rational map with its minimal homogeneous lift."""

    def __init__(self, lift_form: BiForm, check: bool = True) -> None:
        form, _ = minimalize(lift_form)
        self.lift = form
        self.d = form.d
        self.p = form.p
        if check and resultant(form).is_zero():
            raise DegenerateMap("lift has vanishing resultant", self.as_dict())

    # ------------------------------------------------------------------
    @classmethod
    def from_coefficients(cls, numerator: Sequence, denominator: Sequence, p: int) -> "RationalMapRep":
        num, den = Poly(numerator, p), Poly(denominator, p)
        if den.is_zero():
            raise DegenerateMap("zero denominator", {"numerator": [str(c) for c in numerator]})
        d = max(num.degree, den.degree)
        if d < 1:
            raise DegenerateMap("constant map", {"numerator": [str(c) for c in numerator]})
        return cls(BiForm(d, den, num))

    @property
    def numerator(self) -> Poly:
        return self.lift.f1

    @property
    def denominator(self) -> Poly:
        return self.lift.f0

    @cached_property
    def res_val(self) -> Fraction:
        return Fraction(resultant(self.lift).val())

    @cached_property
    def reduction(self) -> ReducedMap:
        return reduce_mod_m(self)

    def e(self) -> int:
        return common_e(self.lift.coefficients())

    def __call__(self, z: Optional[TowerElem]) -> Optional[TowerElem]:
        if z is None:
            c0 = self.lift.f0.coeff(self.d)
            c1 = self.lift.f1.coeff(self.d)
            return None if c0.is_zero() else c1 / c0
        z = lift(z, self.p)
        den = self.denominator(z)
        if den.is_zero():
            return None
        return self.numerator(z) / den

    def __repr__(self) -> str:
        return f"RationalMapRep(d={self.d}, num={self.numerator!r}, den={self.denominator!r})"

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "numerator": [c.as_dict() for c in self.numerator.padded(self.d)],
            "denominator": [c.as_dict() for c in self.denominator.padded(self.d)],
        }


def reduce_mod_m(f: RationalMapRep) -> ReducedMap:
    """Coefficientwise residues of the minimal lift, gcd cancelled over F_p."""
    d = f.d
    den = [c.residue() for c in f.lift.f0.padded(d)]
    num = [c.residue() for c in f.lift.f1.padded(d)]
    return ReducedMap.from_forms(den, num, f.p)


def conjugate(f: RationalMapRep, m: Mobius) -> RationalMapRep:
    """Minimal lift of M^-1 o f o M computed as adj(M) o F o M."""
    inner = f.lift.compose(m.as_form())
    return RationalMapRep(m.adjugate().apply_linear(inner), check=False)


def affine_conjugator(a: Union[TowerElem, int, Fraction], t: Union[int, Fraction], p: int) -> Mobius:
    """H_{a,b} with v(b) = t, sending S_can to zeta(a; t)."""
    a = lift(a, p)
    e = required_e(a.e, t)
    return Mobius.affine(a, uniformizer_of_valuation(t, p, e), p)


def iterate(f: RationalMapRep, n: int, cap: int = DEFAULT_DEGREE_CAP) -> RationalMapRep:
    if n < 1:
        raise ValueError("iterate needs n >= 1")
    if f.d ** n > cap:
        raise DegreeCapExceeded(f"degree {f.d}^{n} exceeds cap {cap}", {"d": f.d, "n": n, "cap": cap})
    form = f.lift
    for _ in range(n - 1):
        form, _ = minimalize(f.lift.compose(form))
    return RationalMapRep(form, check=False)


def fixed_point_divisor(f: RationalMapRep) -> Tuple[Poly, int]:
    """Numerator of f(z) - z and the multiplicity of infinity in [f = Id]."""
    if f.d < 2:
        raise ValueError("fixed point divisor needs d >= 2")
    poly = f.numerator - f.denominator * Poly.z(f.p)
    return poly, f.d + 1 - poly.degree


def _derivative_val(num: Poly, den: Poly, a: TowerElem) -> ExtValue:
    top = num.derivative() * den - num * den.derivative()
    return top(a).val() - 2 * den(a).val()


def chordal_derivative_val(f: RationalMapRep, a: Optional[TowerElem]) -> ExtValue:
    """v(f^#(a)); charts are flipped so source and target both sit in the unit disk."""
    p = f.p
    num, den = f.numerator, f.denominator
    d = f.d
    if a is None or Fraction(a.val()) < 0:
        # source chart eta = 1/z
        num = Poly(list(reversed(num.padded(d))), p)
        den = Poly(list(reversed(den.padded(d))), p)
        a = TowerElem.zero(p) if a is None else lift(a, p).inverse()
    a = lift(a, p)
    n_at, d_at = num(a), den(a)
    if d_at.is_zero() or n_at.val() < d_at.val():
        num, den = den, num
        n_at, d_at = d_at, n_at
    return _derivative_val(num, den, a)


__all__ = [
    "BiForm",
    "Mobius",
    "RationalMapRep",
    "DEFAULT_DEGREE_CAP",
    "determinant",
    "resultant",
    "minimalize",
    "reduce_mod_m",
    "conjugate",
    "affine_conjugator",
    "iterate",
    "fixed_point_divisor",
    "chordal_derivative_val",
]

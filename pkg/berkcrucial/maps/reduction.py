"""Rational maps over the residue field F_p.

Points of P^1(F_p) are encoded as ints 0..p-1 with ``None`` standing for
infinity; the same encoding labels directions at type II points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from berkcrucial.errors import UnsupportedResidueExtension

_z = sympy.Symbol("z")

Residue = Optional[int]


def fp_poly(coeffs_low_to_high: Sequence[int], p: int) -> sympy.Poly:
    coeffs = [int(c) % p for c in coeffs_low_to_high] or [0]
    return sympy.Poly(list(reversed(coeffs)), _z, modulus=p)


def fp_coeffs(poly: sympy.Poly, p: int) -> List[int]:
    """Coefficients low to high, normalized into 0..p-1."""
    if poly.is_zero:
        return []
    return [int(c) % p for c in reversed(poly.all_coeffs())]


def fp_degree(poly: sympy.Poly) -> int:
    return -1 if poly.is_zero else int(poly.degree())


def order_at(poly: sympy.Poly, r: int, p: int) -> int:
    """Order of vanishing at z = r by shift-and-count."""
    if poly.is_zero:
        raise ValueError("order of the zero polynomial is infinite")
    coeffs = fp_coeffs(poly.shift(r), p)
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    return k


def linear_roots(poly: sympy.Poly, p: int) -> List[Tuple[int, int]]:
    """Roots in F_p with multiplicities; any higher-degree factor is an error."""
    if fp_degree(poly) <= 0:
        return []
    _, factors = poly.factor_list()
    roots = []
    for factor, mult in factors:
        coeffs = fp_coeffs(factor, p)
        if len(coeffs) - 1 > 1:
            raise UnsupportedResidueExtension(
                f"residual factor of degree {len(coeffs) - 1} over F_{p}",
                {"p": p, "factor": coeffs},
            )
        root = (-coeffs[0] * pow(coeffs[1], -1, p)) % p
        roots.append((root, int(mult)))
    return sorted(roots)


@dataclass(frozen=True)
class ReducedMap:
    """A rational map num/den over F_p with coprime numerator and denominator."""

    p: int
    num: Tuple[int, ...]
    den: Tuple[int, ...]

    @classmethod
    def from_forms(cls, den_form: Sequence[int], num_form: Sequence[int], p: int) -> "ReducedMap":
        num = fp_poly(num_form, p)
        den = fp_poly(den_form, p)
        if num.is_zero and den.is_zero:
            raise ValueError("both reduced forms vanish; lift was not minimal")
        if num.is_zero:
            return cls(p, (), (1,))
        if den.is_zero:
            return cls(p, (1,), ())
        g = num.gcd(den)
        num, den = num.quo(g), den.quo(g)
        lead = pow(fp_coeffs(den, p)[-1], -1, p)
        return cls(p, tuple(c * lead % p for c in fp_coeffs(num, p)), tuple(c * lead % p for c in fp_coeffs(den, p)))

    # ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return max(len(self.num), len(self.den), 1) - 1

    def is_constant(self) -> bool:
        return self.degree == 0

    def is_identity(self) -> bool:
        return self.num == (0, 1) and self.den == (1,)

    def value(self, r: Residue) -> Residue:
        p = self.p
        num, den = fp_poly(self.num, p), fp_poly(self.den, p)
        if r is None:
            dn, dd = fp_degree(num), fp_degree(den)
            if dn > dd:
                return None
            if dn < dd:
                return 0
            return self.num[-1] * pow(self.den[-1], -1, p) % p
        d_val = int(den.eval(r)) % p if not den.is_zero else 0
        if d_val == 0:
            return None
        n_val = int(num.eval(r)) % p if not num.is_zero else 0
        return n_val * pow(d_val, -1, p) % p

    def multiplicity(self, r: Residue) -> int:
        """Local degree of the map at r (>= 1 for nonconstant maps)."""
        if self.is_constant():
            raise ValueError("multiplicity of a constant reduced map")
        if r is None:
            return self.at_infinity().multiplicity(0)
        p = self.p
        image = self.value(r)
        num, den = fp_poly(self.num, p), fp_poly(self.den, p)
        if image is None:
            return order_at(den, r, p)
        return order_at(num - den * image, r, p)

    def at_infinity(self) -> "ReducedMap":
        """The same map in the coordinate eta = 1/z on the source."""
        d = self.degree
        num = list(self.num) + [0] * (d + 1 - len(self.num))
        den = list(self.den) + [0] * (d + 1 - len(self.den))
        return ReducedMap.from_forms(list(reversed(den)), list(reversed(num)), self.p)

    def preimages(self, target: Residue) -> Dict[Residue, int]:
        """Points of P^1(F_p) over target with multiplicities; must exhaust the degree."""
        p = self.p
        out: Dict[Residue, int] = {}
        num, den = fp_poly(self.num, p), fp_poly(self.den, p)
        equation = den if target is None else num - den * target
        for r, m in linear_roots(equation, p):
            out[r] = m
        if self.value(None) == target:
            out[None] = self.multiplicity(None)
        if sum(out.values()) != self.degree:
            raise UnsupportedResidueExtension(
                f"fibre over {target} is not F_p-rational", {"p": p, "num": self.num, "den": self.den}
            )
        return out

    def fixed_orders(self) -> Dict[Residue, int]:
        """Divisor of [g = Id] on P^1(F_p); total degree + 1 for non-identity maps."""
        p = self.p
        num, den = fp_poly(self.num, p), fp_poly(self.den, p)
        equation = num - den * fp_poly([0, 1], p)
        if equation.is_zero:
            raise ValueError("identity reduction has no fixed divisor")
        out: Dict[Residue, int] = {r: m for r, m in linear_roots(equation, p)}
        at_inf = self.degree + 1 - fp_degree(equation)
        if at_inf:
            out[None] = at_inf
        return out

    def as_dict(self) -> dict:
        return {"p": self.p, "num": list(self.num), "den": list(self.den), "degree": self.degree}


__all__ = ["ReducedMap", "Residue", "fp_poly", "fp_coeffs", "fp_degree", "order_at", "linear_roots"]

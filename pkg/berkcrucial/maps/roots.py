"""Certified p-adic root finding in the ramified tower.

Roots are returned as clusters: a tower center, the exact valuation err_t of
its distance to the true root (so the root lies in the closed disk of radius
p^-err_t) and a multiplicity. Newton polygons give root valuations, residual
polynomials over F_p split each slope into residue classes, and Newton
iteration refines classes holding a single root.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from berkcrucial.errors import NonSeparable, PrecisionExhausted, UnsupportedRamification
from berkcrucial.maps.poly import Poly, newton_polygon
from berkcrucial.maps.reduction import fp_poly, linear_roots
from berkcrucial.tower import INF, ExtValue, TowerElem, common_e, ext_str, required_e, uniformizer_of_valuation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrecisionPolicy:
    start: int = 32
    maximum: int = 512
    # None: e0 * deg * p, e0 the tower of the coefficients
    max_ramification: Optional[int] = None

    def ramification_ceiling(self, poly: Poly) -> int:
        if self.max_ramification is not None:
            return self.max_ramification
        return common_e(poly.coeffs) * poly.degree * poly.p


@dataclass(frozen=True)
class RootCluster:
    center: TowerElem
    err_t: ExtValue
    mult: int = 1

    def as_dict(self) -> dict:
        return {"center": self.center.as_dict(), "err_t": ext_str(self.err_t), "mult": self.mult}


def squarefree_decomposition(poly: Poly) -> List[Tuple[Poly, int]]:
    """Yun's algorithm over Q(pi): poly = lc * prod q_k^k with q_k squarefree, coprime."""
    if poly.degree < 1:
        return []
    out: List[Tuple[Poly, int]] = []
    deriv = poly.derivative()
    a = poly.gcd(deriv)
    b = poly.exact_quo(a)
    c = deriv.exact_quo(a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        g = b.gcd(d)
        if g.degree > 0:
            out.append((g, k))
        b = b.exact_quo(g)
        c = d.exact_quo(g)
        d = c - b.derivative()
        k += 1
    return out


def _residual_roots(coeffs: List[TowerElem], start: int, end: int, sigma: Fraction, p: int) -> List[Tuple[int, int]]:
    level = coeffs[start].val() + start * sigma
    scale = pow(coeffs[start].leading_digit(), -1, p)
    residual = []
    for j in range(start, end + 1):
        c = coeffs[j]
        if c.is_zero() or c.val() + j * sigma != level:
            residual.append(0)
        else:
            residual.append(c.leading_digit() * scale % p)
    return linear_roots(fp_poly(residual, p), p)


def _newton_refine(poly: Poly, z: TowerElem, target: int) -> Tuple[TowerElem, ExtValue]:
    deriv = poly.derivative()
    while True:
        value = poly(z)
        if value.is_zero():
            return z, INF
        slope = deriv(z)
        err = value.val() - slope.val()
        if err >= target:
            return z, err
        prec = max(2 * err, err + 1) + 1
        z = (z - value * slope.approx_inverse(prec - err)).truncate(prec)


def _roots_in_disk(
    poly: Poly, center: TowerElem, floor: ExtValue, target: int, max_e: int, depth: int = 0
) -> List[Tuple[TowerElem, ExtValue]]:
    """Roots r of squarefree poly with v(r - center) > floor."""
    if depth > 4 * target:
        raise NonSeparable("residue-class recursion did not separate roots", {"center": center.as_dict()})
    shifted = poly.shift(center)
    coeffs = list(shifted.coeffs)
    found: List[Tuple[TowerElem, ExtValue]] = []
    if coeffs and coeffs[0].is_zero():
        found.append((center, INF))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return found
    base_e = max(common_e(coeffs), center.e)
    for start, end, sigma in newton_polygon([c.val() for c in coeffs]):
        if floor != -INF and sigma <= floor:
            continue
        e2 = required_e(base_e, sigma)
        if e2 > max_e:
            logger.warning(f"root cluster at valuation {sigma} needs ramification index {e2} > {max_e}")
            raise UnsupportedRamification(
                f"ramification index {e2} exceeds the ceiling {max_e}",
                {"center": center.as_dict(), "valuation": ext_str(sigma), "e": e2},
            )
        b = uniformizer_of_valuation(sigma, poly.p, e2)
        for lam, mult in _residual_roots(coeffs, start, end, sigma, poly.p):
            guess = center + b * lam
            if mult == 1:
                found.append(_newton_refine(poly, guess, target))
            else:
                found.extend(_roots_in_disk(poly, guess, sigma, target, max_e, depth + 1))
    return found


def _separated(clusters: List[RootCluster]) -> bool:
    for i, a in enumerate(clusters):
        for b in clusters[i + 1:]:
            if (a.center - b.center).val() >= min(a.err_t, b.err_t):
                return False
    return True


def padic_roots(poly: Poly, policy: Optional[PrecisionPolicy] = None) -> List[RootCluster]:
    """All finite roots of poly as separated clusters; multiplicities sum to deg."""
    if poly.is_zero():
        raise ValueError("roots of the zero polynomial")
    policy = policy or PrecisionPolicy()
    parts = squarefree_decomposition(poly)
    target = policy.start
    max_e = policy.ramification_ceiling(poly)
    while target <= policy.maximum:
        clusters = [
            RootCluster(center, err, mult)
            for part, mult in parts
            for center, err in _roots_in_disk(part, TowerElem.zero(poly.p), -INF, target, max_e)
        ]
        if _separated(clusters):
            total = sum(c.mult for c in clusters)
            if total != poly.degree:
                raise NonSeparable(f"found {total} roots for degree {poly.degree}", {"degree": poly.degree})
            return clusters
        logger.info(f"root clusters not separated at precision {target}; doubling")
        target *= 2
    raise PrecisionExhausted(f"clusters unresolved at precision {policy.maximum}", {"degree": poly.degree})


def certify_clusters(poly: Poly, clusters: List[RootCluster]) -> bool:
    """v(P(c)) = v(lc) + sum_j mult_j v(c - r_j) at every center."""
    lc_val = poly.lc().val()
    for c in clusters:
        expected: ExtValue = lc_val + c.mult * c.err_t
        for other in clusters:
            if other is not c:
                expected = expected + other.mult * (c.center - other.center).val()
        if poly(c.center).val() != expected:
            return False
    return True


__all__ = ["PrecisionPolicy", "RootCluster", "padic_roots", "squarefree_decomposition", "certify_clusters"]

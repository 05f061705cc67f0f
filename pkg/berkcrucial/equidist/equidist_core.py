"""Quantitative equidistribution of nu_{f^n} toward mu_f against tree test functions.

mu_f is never built. Integrals against it are bracketed by the retracted
pullbacks (f^N)^* delta_S0 / d^N together with the telescope error
C_{S0,f} |Lap phi| / (d^N (d - 1)).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from berkcrucial.crucial import crucial_measure, crucial_tree
from berkcrucial.errors import DegreeCapExceeded, IdentityViolation
from berkcrucial.maps import (
    DEFAULT_DEGREE_CAP,
    PrecisionPolicy,
    RationalMapRep,
    affine_conjugator,
    conjugate,
    iterate,
    padic_roots,
)
from berkcrucial.points import BerkPoint, PiecewiseLinear, rho, rho_profile
from berkcrucial.tower import ext_str
from berkcrucial.trees import (
    FiniteTree,
    TreeMeasure,
    TreePLF,
    laplacian,
    retracted_pullback_measure,
    span,
)

logger = logging.getLogger(__name__)


def retracted_pullback(
    f: RationalMapRep, n: int, base: BerkPoint, tree: FiniteTree, cap: int = DEFAULT_DEGREE_CAP
) -> TreeMeasure:
    """Retraction of (f^n)^* delta_base onto tree, from potential slopes only."""
    g = iterate(f, n, cap)
    measure = retracted_pullback_measure(g, tree, base)
    if measure.total() != g.d:
        raise IdentityViolation(f"pullback mass {measure.total()} differs from {g.d}", measure.as_dict())
    return measure


def c_constant_bound(f: RationalMapRep, base: BerkPoint) -> Fraction:
    """Certified upper bound for C_{base,f}: ordRes of f at base."""
    return conjugate(f, affine_conjugator(base.center, base.t, f.p)).res_val


def potential_sup(f: RationalMapRep, base: BerkPoint, policy: Optional[PrecisionPolicy] = None) -> Fraction:
    """Experimental exact C_{base,f}: sup of G_base over the span of preimages of two points of the disk of base."""
    logger.info(f"experimental potential supremum at {base.label()}")
    targets = [base.center, base.center + base.uniformizer()]
    points: List[BerkPoint] = [base]
    for y in targets:
        poly = f.numerator - f.denominator * y
        points.extend(BerkPoint.from_cluster(c) for c in padic_roots(poly, policy))
        if poly.degree < f.d:
            points.append(BerkPoint.infinity(f.p))
    tree = span(points)
    if tree.is_trivial():
        return Fraction(0)
    phi = TreePLF.from_profile(tree, "potential", f, base)
    return max(Fraction(g.max_value()) for g in phi.edges.values())


def tent_function(tree: FiniteTree, peak: BerkPoint, radius: Fraction = Fraction(1)) -> TreePLF:
    """max(0, radius - rho(., peak)) on the tree; peak is type II."""
    edges = {}
    for _, child in tree.edges():
        seg = tree.segment(child)
        dist = rho_profile(seg, peak, seg.lo, seg.hi)
        edges[child] = (PiecewiseLinear.constant(Fraction(radius), seg.lo, seg.hi) - dist).maximum(
            PiecewiseLinear.constant(Fraction(0), seg.lo, seg.hi)
        )
    return TreePLF(tree, edges, Fraction(radius) if tree.is_trivial() else Fraction(0))


def default_test_tree(f: RationalMapRep, policy: Optional[PrecisionPolicy] = None) -> FiniteTree:
    """S_can, three of its neighbours at distance 1 and the support of nu_f."""
    p = f.p
    points = [BerkPoint.canonical(p), BerkPoint.type_ii(0, 1, p), BerkPoint.type_ii(1, 1, p), BerkPoint.type_ii(0, -1, p)]
    _, weights = crucial_measure(f, crucial_tree(f, policy))
    points.extend(s for s, _ in weights)
    return span(points)


def default_test_functions(tree: FiniteTree, count: int = 3) -> List[Tuple[str, TreePLF]]:
    peaks = [v for v in tree.vertices if v.is_type_ii][:count]
    return [(f"tent@{v.label()}", tent_function(tree, v)) for v in peaks]


def mu_integral(
    f: RationalMapRep, phi: TreePLF, n: int, base: Optional[BerkPoint] = None, cap: int = DEFAULT_DEGREE_CAP
) -> Tuple[Fraction, Fraction]:
    """(value, err) with the integral of phi against mu_f inside [value - err, value + err]."""
    base = base or BerkPoint.canonical(f.p)
    pulled = retracted_pullback(f, n, base, phi.tree, cap)
    scale = Fraction(1, f.d ** n)
    value = phi.integrate(pulled) * scale
    err = c_constant_bound(f, base) * laplacian(phi).total_variation() * scale / (f.d - 1)
    return value, err


@dataclass
class EquidistRecord:
    label: str
    n: int
    nu_integral: Fraction
    mu_value: Fraction
    mu_err: Fraction
    lhs_upper: Fraction
    rhs: Fraction

    @property
    def margin(self) -> Fraction:
        return self.rhs - self.lhs_upper

    @property
    def ok(self) -> bool:
        return self.margin >= 0

    def as_row(self) -> dict:
        row = {k: ext_str(v) if isinstance(v, Fraction) else v for k, v in asdict(self).items()}
        row["margin"] = ext_str(self.margin)
        row["ok"] = self.ok
        return row


def quantitative_check(
    f: RationalMapRep,
    n: int,
    phi: TreePLF,
    label: str = "phi",
    base: Optional[BerkPoint] = None,
    tail: int = 4,
    cap: int = DEFAULT_DEGREE_CAP,
    policy: Optional[PrecisionPolicy] = None,
) -> EquidistRecord:
    """Compare the integral against nu_{f^n} with the mu_f bracket and the quantitative bound."""
    if f.d ** n > cap:
        raise DegreeCapExceeded(f"degree {f.d}^{n} exceeds cap {cap}", {"d": f.d, "n": n, "cap": cap})
    base = base or BerkPoint.canonical(f.p)
    tree = phi.tree
    if any(v.is_type_i for v in tree.vertices):
        raise ValueError("test trees must avoid type I points")
    g = iterate(f, n, cap)
    g_tree = crucial_tree(g, policy)
    nu_n, _ = crucial_measure(g, g_tree)
    nu_integral = phi.integrate(nu_n)
    # the bracket runs tail iterates past n, under its own cap d^tail times the nu cap
    mu_value, mu_err = mu_integral(f, phi, n + tail, base, cap * f.d ** tail)
    lhs_upper = abs(nu_integral - mu_value) + mu_err

    total_lap = laplacian(phi).total_variation()
    reach = max((Fraction(rho(v, base)) for v in tree.vertices), default=Fraction(0))
    image = span([tree.retract(v) for v in g_tree.vertices])
    loose = sum(1 for i in tree.endpoints() if not image.contains(tree.vertices[i]))
    denom = f.d ** n - 1
    rhs = 2 * (c_constant_bound(f, base) / (f.d - 1) + reach) / denom * total_lap
    rhs += Fraction(2 * loose, denom) * Fraction(phi.sup_abs())
    record = EquidistRecord(label, n, nu_integral, mu_value, mu_err, lhs_upper, rhs)
    if not record.ok:
        logger.error(f"quantitative bound fails for {label} at n={n}: {record.as_row()}")
    return record


def equidist_grid(
    f: RationalMapRep,
    ns: Sequence[int],
    functions: Iterable[Tuple[str, TreePLF]],
    workers: int = 4,
    **kwargs,
) -> pd.DataFrame:
    """Every (n, phi) cell of the convergence table, evaluated in a thread pool."""
    functions = list(functions)
    cells = [(n, label, phi) for n in ns for label, phi in functions]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        records = list(executor.map(lambda cell: quantitative_check(f, cell[0], cell[2], cell[1], **kwargs), cells))
    return pd.DataFrame([r.as_row() for r in records])


def write_equidist_csv(frame: pd.DataFrame, path: str) -> None:
    frame.to_csv(path, index=False)


__all__ = [
    "EquidistRecord",
    "c_constant_bound",
    "default_test_functions",
    "default_test_tree",
    "equidist_grid",
    "mu_integral",
    "potential_sup",
    "quantitative_check",
    "retracted_pullback",
    "tent_function",
    "write_equidist_csv",
]

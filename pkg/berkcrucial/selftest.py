"""
Seeded invariant suite run in-process by the selftest command.
Each check draws random maps and points and verifies an exact identity.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from berkcrucial.crucial import (
    branch_atoms,
    check_diam_bounds,
    crucial_measure,
    crucial_slope,
    crucial_tree,
    extended_tree_prediction,
    minresloc,
    ordres_all,
    outside_slope,
    slope_range,
)
from berkcrucial.degrees import degree_data
from berkcrucial.errors import (
    BerkCrucialError,
    DegenerateMap,
    NonSeparable,
    PrecisionExhausted,
    UnsupportedExtension,
)
from berkcrucial.maps import PrecisionPolicy, RationalMapRep
from berkcrucial.points import BerkPoint, Direction
from berkcrucial.trees import FiniteTree, TreePLF, laplacian, span

logger = logging.getLogger(__name__)

PRIMES = (2, 3, 5)
DEPTHS = [Fraction(k) for k in range(-2, 3)] + [Fraction(1, 2), Fraction(-1, 2)]

SKIPPABLE = (UnsupportedExtension, NonSeparable, PrecisionExhausted)


class InvariantFailure(Exception):
    """An exact identity did not hold on a sampled instance."""


def random_map(rng: np.random.Generator, p: int) -> RationalMapRep:
    """Degree 2 or 3 map with small rational coefficients, p and 1/p included."""
    values = [Fraction(k) for k in range(-2, 3)] + [Fraction(p), Fraction(1, p)]
    while True:
        d = int(rng.integers(2, 4))
        numerator = [values[int(rng.integers(len(values)))] for _ in range(d + 1)]
        if rng.random() < 0.5:
            denominator = [Fraction(1)]
        else:
            denominator = [values[int(rng.integers(len(values)))] for _ in range(d + 1)]
        try:
            f = RationalMapRep.from_coefficients(numerator, denominator, p)
        except DegenerateMap:
            continue
        if f.d >= 2:
            return f


def random_point(rng: np.random.Generator, p: int) -> BerkPoint:
    a = int(rng.integers(0, p + 1))
    return BerkPoint.type_ii(a, DEPTHS[int(rng.integers(len(DEPTHS)))], p)


def _directions(s: BerkPoint) -> List[Direction]:
    return [Direction(s, r) for r in range(s.p)] + [Direction(s, None)]


# ----------------------------------------------------------------------
# Checks
# ----------------------------------------------------------------------

def check_ordres(f: RationalMapRep, s: BerkPoint, policy: PrecisionPolicy) -> None:
    ordres_all(f, s)


def check_degrees(f: RationalMapRep, s: BerkPoint, policy: PrecisionPolicy) -> None:
    data = degree_data(f, s)
    for target in {rec.image.residue for rec in data.records}:
        fibre = data.reduction.preimages(target)
        if sum(fibre.values()) != data.local_deg or data.directional_sum(target) != data.local_deg:
            raise InvariantFailure(f"directional degrees over {target} at {s.label()} miss the local degree")
    if sum(r.s for r in data.records) + data.other_surplus != f.d - data.local_deg:
        raise InvariantFailure(f"surplus degrees at {s.label()} do not total d - deg")
    if data.is_fixed and not data.reduction.is_identity():
        if sum(data.reduction.fixed_orders().values()) != data.local_deg + 1:
            raise InvariantFailure(f"fixed directions at {s.label()} do not total deg + 1")


def check_slopes(f: RationalMapRep, s: BerkPoint, policy: PrecisionPolicy) -> None:
    allowed = set(slope_range(f.d))
    slopes = [crucial_slope(f, s, v) for v in _directions(s)]
    if any(m not in allowed for m in slopes):
        raise InvariantFailure(f"slope outside the allowed range at {s.label()}: {slopes}")
    ordered = sorted(slopes)
    if ordered[0] + ordered[1] < 0:
        raise InvariantFailure(f"two directions descend at {s.label()}: {ordered[:2]}")


def check_measure(f: RationalMapRep, s: BerkPoint, policy: PrecisionPolicy) -> None:
    tree = crucial_tree(f, policy)
    nu, weights = crucial_measure(f, tree)
    if nu.total() != 1 or len(weights) > f.d - 1:
        raise InvariantFailure("crucial measure is not a probability on at most d - 1 points")
    if any(not q.is_type_ii for q, _ in weights):
        raise InvariantFailure("crucial measure charges a non type II point")
    locus = minresloc(f, tree.refine(nu.support()), nu)
    check_diam_bounds(f, locus, [q for q, _ in weights])


def _hanging_point(tree: FiniteTree, s: BerkPoint) -> Optional[BerkPoint]:
    """s itself when off the tree, else a nearby type II point off it."""
    if not tree.contains(s):
        return s
    for t in (s.t + 1, s.t + 2):
        for a in range(s.p + 1):
            q = BerkPoint.type_ii(a, t, s.p)
            if not tree.contains(q):
                return q
    return None


def check_branches(f: RationalMapRep, s: BerkPoint, policy: PrecisionPolicy) -> None:
    tree = crucial_tree(f, policy)
    q = _hanging_point(tree, s)
    if q is None:
        return
    anchor = tree.retract(q)
    branch = span([anchor, q])
    atoms = branch_atoms(f, branch, anchor)
    for v, (case, value) in extended_tree_prediction(f, branch, anchor).items():
        if atoms.mass_at(v) != value:
            raise InvariantFailure(f"case {case} at {v.label()} predicts {value}, measure gives {atoms.mass_at(v)}")
    computed, predicted = outside_slope(f, q, tree)
    if computed != predicted:
        raise InvariantFailure(f"slope toward the crucial tree at {q.label()} is {computed}, expected {predicted}")


def check_laplacian(f: RationalMapRep, s: BerkPoint, policy: PrecisionPolicy) -> None:
    can = BerkPoint.canonical(f.p)
    big = span([can, s, BerkPoint.type_ii(1, 1, f.p), BerkPoint.type_ii(0, -1, f.p)])
    small = span([can, s])
    if small.is_trivial():
        return
    phi = TreePLF.from_profile(big, "crucial", f)
    pushed = laplacian(phi).retracted(small)
    if laplacian(phi.restrict_to(small)) != pushed:
        raise InvariantFailure(f"Laplacian is not retraction compatible on {small}")


CHECKS: Dict[str, Callable[[RationalMapRep, BerkPoint, PrecisionPolicy], None]] = {
    "ordres": check_ordres,
    "degrees": check_degrees,
    "slopes": check_slopes,
    "measure": check_measure,
    "branches": check_branches,
    "laplacian": check_laplacian,
}


def run_check(
    name: str, rng: np.random.Generator, samples: int, policy: Optional[PrecisionPolicy] = None
) -> Tuple[Dict[str, int], List[dict]]:
    """One check on samples random instances: (counts, failures)."""
    check = CHECKS[name]
    policy = policy or PrecisionPolicy()
    counts = {"passed": 0, "failed": 0, "skipped": 0}
    failures: List[dict] = []
    for _ in range(samples):
        p = PRIMES[int(rng.integers(len(PRIMES)))]
        f, s = random_map(rng, p), random_point(rng, p)
        try:
            check(f, s, policy)
            counts["passed"] += 1
        except SKIPPABLE as exc:
            logger.info(f"{name}: skipped {f!r} at {s.label()}: {exc}")
            counts["skipped"] += 1
        except (InvariantFailure, BerkCrucialError, ValueError) as exc:
            logger.error(f"{name}: failed {f!r} at {s.label()}: {exc}")
            counts["failed"] += 1
            failures.append({"check": name, "map": f.as_dict(), "at": s.as_dict(), "message": str(exc)})
    logger.info(f"{name}: {counts}")
    return counts, failures


def run_suite(seed: int, samples: int = 20, policy: Optional[PrecisionPolicy] = None) -> dict:
    """Run every check on samples random instances; the summary is JSON-ready."""
    rng = np.random.default_rng(seed)
    summary = {"seed": seed, "samples": samples, "checks": {}, "failures": []}
    for name in CHECKS:
        counts, failures = run_check(name, rng, samples, policy)
        summary["checks"][name] = counts
        summary["failures"].extend(failures)
    summary["passed"] = not summary["failures"]
    return summary


__all__ = ["CHECKS", "InvariantFailure", "random_map", "random_point", "run_check", "run_suite"]

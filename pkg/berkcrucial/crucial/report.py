"""One-call assembly of everything the crucial pipeline computes for a map."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from berkcrucial.crucial.measure import Weights, crucial_measure
from berkcrucial.crucial.minres import MinResLocus, check_diam_bounds, is_potentially_good, minresloc
from berkcrucial.crucial.tree_build import crucial_tree
from berkcrucial.maps import PrecisionPolicy, RationalMapRep
from berkcrucial.trees import FiniteTree, TreeMeasure

logger = logging.getLogger(__name__)


@dataclass
class CrucialReport:
    f: RationalMapRep
    tree: FiniteTree
    nu: TreeMeasure
    weights: Weights
    locus: MinResLocus
    potentially_good: bool
    diam: Dict[str, Optional[Fraction]] = field(default_factory=dict)

    def weight_annotations(self) -> Dict[int, str]:
        out = {}
        for s, w in self.weights:
            i = self.tree.index_of(s)
            if i is not None:
                out[i] = f"w={w}"
        return out

    def to_dot(self) -> str:
        return self.tree.to_dot(self.weight_annotations(), name="crucial")


def build_report(f: RationalMapRep, policy: Optional[PrecisionPolicy] = None) -> CrucialReport:
    tree = crucial_tree(f, policy)
    nu, weights = crucial_measure(f, tree)
    # atoms off the vertex set are added so DOT annotations find them
    tree = tree.refine(nu.support())
    locus = minresloc(f, tree, nu)
    good = is_potentially_good(f, locus)
    diam = check_diam_bounds(f, locus, [s for s, _ in weights])
    logger.info(f"report for degree {f.d} map: locus {[s.label() for s in locus.ends]}, min {locus.min_ordres}")
    return CrucialReport(f, tree, nu, weights, locus, good, diam)


__all__ = ["CrucialReport", "build_report"]

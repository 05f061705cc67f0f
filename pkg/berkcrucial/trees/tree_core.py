"""Finite subtrees of the Berkovich line rooted at their highest vertex.

Vertices are kept closed under least common ancestors, so every edge joins a
vertex to its nearest proper ancestor and is a vertical segment
{zeta(c_child; tau)}. Infinity, when present, is the root.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from berkcrucial.points import BerkPoint, Direction, VerticalSegment, rho
from berkcrucial.tower import INF, ExtValue, ext_str

logger = logging.getLogger(__name__)


def unique_points(points: Iterable[BerkPoint]) -> List[BerkPoint]:
    out: List[BerkPoint] = []
    for pt in points:
        if not any(pt == q for q in out):
            out.append(pt)
    return out


class FiniteTree:
    """A finite subtree given by an LCA-closed vertex set."""

    def __init__(self, vertices: Sequence[BerkPoint]) -> None:
        verts = unique_points(vertices)
        if not verts:
            raise ValueError("a tree needs at least one vertex")
        verts.sort(key=lambda v: (v.depth, v.label()))
        self.vertices: List[BerkPoint] = verts
        self.p = verts[0].p
        self.parent: List[Optional[int]] = [None] * len(verts)
        self.children: List[List[int]] = [[] for _ in verts]
        for i, v in enumerate(verts):
            best: Optional[int] = None
            for j in range(i):
                w = verts[j]
                if w.depth < v.depth and w.is_ancestor_of(v):
                    if best is None or verts[best].depth < w.depth:
                        best = j
            self.parent[i] = best
            if best is not None:
                self.children[best].append(i)
        roots = [i for i, par in enumerate(self.parent) if par is None]
        if len(roots) != 1:
            raise ValueError("vertex set is not closed under least common ancestors")
        self.root = roots[0]

    # ------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"FiniteTree({[v.label() for v in self.vertices]})"

    def index_of(self, point: BerkPoint) -> Optional[int]:
        for i, v in enumerate(self.vertices):
            if v == point:
                return i
        return None

    def is_trivial(self) -> bool:
        return len(self.vertices) == 1

    def edges(self) -> List[Tuple[int, int]]:
        """(parent, child) index pairs."""
        return [(par, i) for i, par in enumerate(self.parent) if par is not None]

    def segment(self, child: int) -> VerticalSegment:
        par = self.parent[child]
        if par is None:
            raise ValueError("the root has no parent edge")
        return VerticalSegment.between(self.vertices[par], self.vertices[child])

    def edge_length(self, child: int) -> ExtValue:
        par = self.parent[child]
        return rho(self.vertices[par], self.vertices[child])

    def valency(self, i: int) -> int:
        return len(self.children[i]) + (self.parent[i] is not None)

    def endpoints(self) -> List[int]:
        return [i for i in range(len(self.vertices)) if self.valency(i) <= 1]

    def directions(self, i: int) -> List[Direction]:
        """Tree directions at vertex i, children first, then up."""
        v = self.vertices[i]
        out = [v.direction_to(self.vertices[c]) for c in self.children[i]]
        if self.parent[i] is not None:
            out.append(v.direction_to(self.vertices[self.parent[i]]))
        return out

    def subtree(self, i: int) -> List[int]:
        stack, out = [i], []
        while stack:
            j = stack.pop()
            out.append(j)
            stack.extend(self.children[j])
        return out

    def branch_toward(self, i: int, direction: Direction) -> List[int]:
        """Vertex indices in the component of direction at vertex i."""
        for c in self.children[i]:
            if self.vertices[i].direction_to(self.vertices[c]) == direction:
                return self.subtree(c)
        if self.parent[i] is not None and direction.is_up:
            below = set(self.subtree(i))
            return [j for j in range(len(self.vertices)) if j not in below]
        return []

    # ------------------------------------------------------------------
    def retract(self, point: BerkPoint) -> BerkPoint:
        """Nearest point of the tree to point."""
        root = self.vertices[self.root]
        best_i, best_u = 0, -INF
        for i, v in enumerate(self.vertices):
            u = v.meet(point) if not v.is_infinity else -INF
            if u > best_u or (u == best_u and v.depth > self.vertices[best_i].depth):
                best_i, best_u = i, u
        if best_u == INF:
            return self.vertices[best_i]
        if root.is_infinity:
            if best_u == -INF:
                return root
        elif best_u <= root.depth:
            return root
        return self.vertices[best_i].ancestor_at(best_u)

    def contains(self, point: BerkPoint) -> bool:
        return self.retract(point) == point

    def locate(self, point: BerkPoint) -> Tuple[str, int]:
        """('vertex', i) or ('edge', child) for a point of the tree."""
        i = self.index_of(point)
        if i is not None:
            return "vertex", i
        if not self.contains(point):
            raise ValueError(f"{point.label()} is not on the tree")
        below = [j for j, v in enumerate(self.vertices) if point.is_ancestor_of(v)]
        child = min(below, key=lambda j: self.vertices[j].depth)
        return "edge", child

    def refine(self, points: Iterable[BerkPoint]) -> "FiniteTree":
        return span(list(self.vertices) + list(points))

    # ------------------------------------------------------------------
    def to_dot(self, annotations: Optional[Dict[int, str]] = None, name: str = "G") -> str:
        """Graphviz text; edges point from parent to child."""
        annotations = annotations or {}
        lines = [f"graph {name} {{", "    node [shape=box];"]
        for i, v in enumerate(self.vertices):
            label = v.label()
            if i in annotations:
                label += f"\\n{annotations[i]}"
            lines.append(f'    v{i} [label="{label}"];')
        for par, child in self.edges():
            lines.append(f'    v{par} -- v{child} [label="{ext_str(self.edge_length(child))}"];')
        lines.append("}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "vertices": [v.as_dict() for v in self.vertices],
            "edges": [[par, child] for par, child in self.edges()],
            "lengths": [ext_str(self.edge_length(child)) for _, child in self.edges()],
        }


def span(points: Sequence[BerkPoint]) -> FiniteTree:
    """Minimal subtree containing points: the points and their pairwise LCAs."""
    pts = unique_points(points)
    if not pts:
        raise ValueError("span of no points")
    verts = list(pts)
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            verts.append(a.lca(b))
    return FiniteTree(verts)


__all__ = ["FiniteTree", "span", "unique_points"]

"""Exact continuous piecewise-linear functions of one rational parameter.

A function lives on [lo, hi] where either end may be infinite. It is stored as
sorted knots with exact values; the ends lo and hi are knots whenever finite,
and infinite ends carry a terminal slope.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from berkcrucial.tower import INF, ExtValue

Line = Tuple[Fraction, Fraction]  # (intercept, slope): value = intercept + slope * x


class PiecewiseLinear:
    __slots__ = ("lo", "hi", "knots", "values", "left_slope", "right_slope")

    def __init__(
        self,
        lo: ExtValue,
        hi: ExtValue,
        knots: Sequence[Fraction],
        values: Sequence[Fraction],
        left_slope: Fraction = Fraction(0),
        right_slope: Fraction = Fraction(0),
    ) -> None:
        if not knots or len(knots) != len(values):
            raise ValueError("piecewise-linear function needs matching knots and values")
        if lo > hi:
            raise ValueError(f"empty domain [{lo}, {hi}]")
        if lo != -INF and knots[0] != lo or hi != INF and knots[-1] != hi:
            raise ValueError("finite domain ends must be knots")
        self.lo = lo
        self.hi = hi
        self.knots: Tuple[Fraction, ...] = tuple(Fraction(k) for k in knots)
        self.values: Tuple[Fraction, ...] = tuple(Fraction(v) for v in values)
        self.left_slope = Fraction(left_slope) if lo == -INF else Fraction(0)
        self.right_slope = Fraction(right_slope) if hi == INF else Fraction(0)

    # ------------------------------------------------------------------
    @classmethod
    def constant(cls, c: Fraction, lo: ExtValue, hi: ExtValue) -> "PiecewiseLinear":
        return cls.from_line((Fraction(c), Fraction(0)), lo, hi)

    @classmethod
    def from_line(cls, line: Line, lo: ExtValue, hi: ExtValue) -> "PiecewiseLinear":
        c, s = line
        anchors = _anchor_points(lo, hi)
        return cls(lo, hi, anchors, [c + s * x for x in anchors], s, s)

    @classmethod
    def lower_envelope(cls, lines: Iterable[Line], lo: ExtValue, hi: ExtValue) -> "PiecewiseLinear":
        """Pointwise minimum of finitely many lines."""
        lines = list(lines)
        if not lines:
            raise ValueError("lower envelope of no lines")
        result = cls.from_line(lines[0], lo, hi)
        for line in lines[1:]:
            result = result.minimum(cls.from_line(line, lo, hi))
        return result

    @classmethod
    def concat(cls, pieces: Sequence["PiecewiseLinear"]) -> "PiecewiseLinear":
        """Glue pieces with matching shared ends into one function."""
        if not pieces:
            raise ValueError("nothing to concatenate")
        knots: List[Fraction] = []
        values: List[Fraction] = []
        for i, piece in enumerate(pieces):
            if i and piece.lo != pieces[i - 1].hi:
                raise ValueError("pieces do not share an end")
            for k, v in zip(piece.knots, piece.values):
                if knots and k == knots[-1]:
                    if v != values[-1]:
                        raise ValueError(f"discontinuity at {k}")
                    continue
                knots.append(k)
                values.append(v)
        return cls(pieces[0].lo, pieces[-1].hi, knots, values, pieces[0].left_slope, pieces[-1].right_slope)

    # ------------------------------------------------------------------
    def __call__(self, x: ExtValue) -> ExtValue:
        if x < self.lo or x > self.hi:
            raise ValueError(f"{x} outside [{self.lo}, {self.hi}]")
        if x == -INF:
            return self._ray_limit(self.left_slope, self.values[0], -1)
        if x == INF:
            return self._ray_limit(self.right_slope, self.values[-1], 1)
        x = Fraction(x)
        ks = self.knots
        if x <= ks[0]:
            return self.values[0] + self.left_slope * (x - ks[0])
        if x >= ks[-1]:
            return self.values[-1] + self.right_slope * (x - ks[-1])
        i = _bisect(ks, x)
        k0, k1 = ks[i], ks[i + 1]
        v0, v1 = self.values[i], self.values[i + 1]
        return v0 + (v1 - v0) * (x - k0) / (k1 - k0)

    @staticmethod
    def _ray_limit(slope: Fraction, anchor: Fraction, direction: int) -> ExtValue:
        if slope == 0:
            return anchor
        return INF if slope * direction > 0 else -INF

    def slope_right(self, x: ExtValue) -> Fraction:
        """d/dx from the right at x."""
        if x == -INF or x < self.knots[0]:
            return self.left_slope
        if x >= self.knots[-1]:
            return self.right_slope
        i = _bisect(self.knots, Fraction(x))
        return self._piece_slope(i)

    def slope_left(self, x: ExtValue) -> Fraction:
        """d/dx from the left at x."""
        if x == INF or x > self.knots[-1]:
            return self.right_slope
        if x <= self.knots[0]:
            return self.left_slope
        i = _bisect(self.knots, Fraction(x))
        if self.knots[i] == x:
            i -= 1
        return self._piece_slope(i)

    def _piece_slope(self, i: int) -> Fraction:
        k0, k1 = self.knots[i], self.knots[i + 1]
        return (self.values[i + 1] - self.values[i]) / (k1 - k0)

    def slopes(self) -> List[Fraction]:
        """Slopes of all pieces, rays included, left to right."""
        out = [self.left_slope] if self.lo == -INF else []
        out += [self._piece_slope(i) for i in range(len(self.knots) - 1)]
        if self.hi == INF:
            out.append(self.right_slope)
        return out

    def breakpoints(self) -> List[Fraction]:
        """Interior points where the slope changes."""
        out = []
        for i, k in enumerate(self.knots):
            if k == self.lo or k == self.hi:
                continue
            if self.slope_left(k) != self.slope_right(k):
                out.append(k)
        return out

    def simplified(self) -> "PiecewiseLinear":
        keep = set(self.breakpoints())
        knots = [k for k in self.knots if k in keep or k == self.lo or k == self.hi]
        if not knots:
            knots = [self.knots[0]]
        return PiecewiseLinear(self.lo, self.hi, knots, [self(k) for k in knots], self.left_slope, self.right_slope)

    def restrict(self, lo: ExtValue, hi: ExtValue) -> "PiecewiseLinear":
        if lo < self.lo or hi > self.hi or lo > hi:
            raise ValueError(f"[{lo}, {hi}] not inside [{self.lo}, {self.hi}]")
        knots = {k for k in self.knots if lo < k < hi} | {Fraction(x) for x in (lo, hi) if abs(x) != INF}
        knots = sorted(knots) or [Fraction(0)]
        return PiecewiseLinear(lo, hi, knots, [self(k) for k in knots], self.slope_right(lo), self.slope_left(hi))

    def sup_abs(self) -> ExtValue:
        vals = [abs(v) for v in self.values]
        if self.left_slope != 0 or self.right_slope != 0:
            return INF
        return max(vals)

    def max_value(self) -> ExtValue:
        if self.left_slope < 0 or self.right_slope > 0:
            return INF
        return max(self.values)

    def min_value(self) -> ExtValue:
        if self.left_slope > 0 or self.right_slope < 0:
            return -INF
        return min(self.values)

    # ------------------------------------------------------------------
    def _combine(self, other: "PiecewiseLinear", op: Callable[[Fraction, Fraction], Fraction], crossings: bool) -> "PiecewiseLinear":
        if self.lo != other.lo or self.hi != other.hi:
            raise ValueError("domains differ")
        knots = sorted(set(self.knots) | set(other.knots))
        if crossings:
            knots = sorted(set(knots) | set(_crossings(self, other, knots)))
        values = [op(self(k), other(k)) for k in knots]
        left = right = Fraction(0)
        if self.lo == -INF:
            probe = knots[0] - 1
            if not crossings:
                left = op(self.left_slope, other.left_slope)
            else:
                left = self.left_slope if op(self(probe), other(probe)) == self(probe) else other.left_slope
        if self.hi == INF:
            probe = knots[-1] + 1
            if not crossings:
                right = op(self.right_slope, other.right_slope)
            else:
                right = self.right_slope if op(self(probe), other(probe)) == self(probe) else other.right_slope
        return PiecewiseLinear(self.lo, self.hi, knots, values, left, right).simplified()

    def __add__(self, other):
        if isinstance(other, PiecewiseLinear):
            return self._combine(other, lambda a, b: a + b, False)
        return PiecewiseLinear(self.lo, self.hi, self.knots, [v + other for v in self.values], self.left_slope, self.right_slope)

    __radd__ = __add__

    def __neg__(self) -> "PiecewiseLinear":
        return self.scale(Fraction(-1))

    def __sub__(self, other):
        if isinstance(other, PiecewiseLinear):
            return self._combine(other, lambda a, b: a - b, False)
        return self + (-Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Fraction) -> "PiecewiseLinear":
        c = Fraction(c)
        return PiecewiseLinear(self.lo, self.hi, self.knots, [v * c for v in self.values], self.left_slope * c, self.right_slope * c)

    def __mul__(self, c: Fraction) -> "PiecewiseLinear":
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "PiecewiseLinear":
        return self.scale(1 / Fraction(c))

    def minimum(self, other: "PiecewiseLinear") -> "PiecewiseLinear":
        return self._combine(other, min, True)

    def maximum(self, other: "PiecewiseLinear") -> "PiecewiseLinear":
        return self._combine(other, max, True)

    def reparametrized(self, sign: int, shift: Fraction) -> "PiecewiseLinear":
        """x -> sign * x + shift, i.e. returns g with g(sign * x + shift) = self(x)."""
        shift = Fraction(shift)
        if sign == 1:
            return PiecewiseLinear(
                _shifted(self.lo, shift), _shifted(self.hi, shift),
                [k + shift for k in self.knots], self.values, self.left_slope, self.right_slope,
            )
        lo, hi = _shifted(-self.hi, shift), _shifted(-self.lo, shift)
        knots = [shift - k for k in reversed(self.knots)]
        return PiecewiseLinear(lo, hi, knots, list(reversed(self.values)), -self.right_slope, -self.left_slope)

    def zero_set(self) -> List[Tuple[ExtValue, ExtValue]]:
        """Closed intervals (possibly degenerate) where the function vanishes."""
        out: List[Tuple[ExtValue, ExtValue]] = []

        def add(a: ExtValue, b: ExtValue) -> None:
            if out and out[-1][1] >= a:
                out[-1] = (out[-1][0], max(out[-1][1], b))
            else:
                out.append((a, b))

        ks, vs = self.knots, self.values
        if self.lo == -INF and vs[0] == 0 and self.left_slope == 0:
            add(-INF, ks[0])
        elif self.lo == -INF and self.left_slope != 0 and vs[0] * self.left_slope > 0:
            add(ks[0] - vs[0] / self.left_slope, ks[0] - vs[0] / self.left_slope)
        for i, k in enumerate(ks):
            if vs[i] == 0:
                add(k, k)
            if i + 1 < len(ks):
                a, b = vs[i], vs[i + 1]
                if a == 0 and b == 0:
                    add(k, ks[i + 1])
                elif a * b < 0:
                    x = k + a / (a - b) * (ks[i + 1] - k)
                    add(x, x)
        if self.hi == INF and vs[-1] == 0 and self.right_slope == 0:
            add(ks[-1], INF)
        elif self.hi == INF and self.right_slope != 0 and vs[-1] * self.right_slope < 0:
            x = ks[-1] - vs[-1] / self.right_slope
            add(x, x)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewiseLinear):
            return NotImplemented
        if self.lo != other.lo or self.hi != other.hi:
            return False
        a, b = self.simplified(), other.simplified()
        return (a.knots, a.values, a.left_slope, a.right_slope) == (b.knots, b.values, b.left_slope, b.right_slope)

    def __repr__(self) -> str:
        pts = ", ".join(f"{k}:{v}" for k, v in zip(self.knots, self.values))
        return f"PiecewiseLinear([{self.lo}, {self.hi}]; {pts}; rays {self.left_slope}/{self.right_slope})"

    def as_rows(self) -> List[Tuple[ExtValue, ExtValue]]:
        rows: List[Tuple[ExtValue, ExtValue]] = []
        if self.lo == -INF:
            rows.append((-INF, self(-INF)))
        rows.extend(zip(self.knots, self.values))
        if self.hi == INF:
            rows.append((INF, self(INF)))
        return rows


def _shifted(x: ExtValue, shift: Fraction) -> ExtValue:
    return x if abs(x) == INF else x + shift


def _anchor_points(lo: ExtValue, hi: ExtValue) -> List[Fraction]:
    pts = [Fraction(x) for x in (lo, hi) if abs(x) != INF]
    if not pts:
        return [Fraction(0)]
    return sorted(set(pts))


def _bisect(knots: Sequence[Fraction], x: Fraction) -> int:
    """Index i with knots[i] <= x < knots[i+1] (knots[0] <= x < knots[-1])."""
    lo, hi = 0, len(knots) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if knots[mid] <= x:
            lo = mid
        else:
            hi = mid
    return lo


def _crossings(a: PiecewiseLinear, b: PiecewiseLinear, knots: List[Fraction]) -> List[Fraction]:
    out: List[Fraction] = []
    diffs = [a(k) - b(k) for k in knots]
    for i in range(len(knots) - 1):
        h0, h1 = diffs[i], diffs[i + 1]
        if h0 * h1 < 0:
            out.append(knots[i] + h0 / (h0 - h1) * (knots[i + 1] - knots[i]))
    if a.lo == -INF:
        ds = a.left_slope - b.left_slope
        if ds != 0:
            x = knots[0] - diffs[0] / ds
            if x < knots[0]:
                out.append(x)
    if a.hi == INF:
        ds = a.right_slope - b.right_slope
        if ds != 0:
            x = knots[-1] - diffs[-1] / ds
            if x > knots[-1]:
                out.append(x)
    return out


def gauss_profile(coeffs: Sequence, lo: ExtValue, hi: ExtValue) -> Optional[PiecewiseLinear]:
    """tau -> min_j (val c_j + j tau) as a function; None when every c_j vanishes."""
    lines = [(Fraction(c.val()), Fraction(j)) for j, c in enumerate(coeffs) if not c.is_zero()]
    if not lines:
        return None
    return PiecewiseLinear.lower_envelope(lines, lo, hi)


__all__ = ["PiecewiseLinear", "Line", "gauss_profile"]

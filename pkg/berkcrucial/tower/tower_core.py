"""Exact arithmetic in the totally ramified tower Q(pi), pi^e = p.

Elements carry exact rational coefficients over the basis 1, pi, ..., pi^(e-1).
Valuations are normalized so that v(p) = 1; the value group of a context is
(1/e)Z. Elements of different ramification index are combined by embedding
both into the lcm tower.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

import sympy

from berkcrucial.errors import NotIntegral

logger = logging.getLogger(__name__)

INF = math.inf
ExtValue = Union[Fraction, float]
Scalar = Union[int, Fraction, "TowerElem"]

_X = sympy.Symbol("X")


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(q: Union[int, Fraction], p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def residue_of_rational(q: Fraction, p: int) -> int:
    q = Fraction(q)
    if q == 0:
        return 0
    if vp(q, p) < 0:
        raise NotIntegral(f"{q} is not p-integral", {"value": str(q), "p": p})
    return (q.numerator * pow(q.denominator, -1, p)) % p


def truncate_rational(q: Fraction, p: int, bound: int) -> Fraction:
    """Canonical representative of q modulo p^bound Z_(p)."""
    if q == 0:
        return Fraction(0)
    k = vp(q, p)
    if k >= bound:
        return Fraction(0)
    unit = q / Fraction(p) ** k
    modulus = p ** (bound - k)
    digits = (unit.numerator * pow(unit.denominator, -1, modulus)) % modulus
    return Fraction(digits) * Fraction(p) ** k


@dataclass(frozen=True)
class TowerContext:
    p: int
    e: int = 1

    def __post_init__(self) -> None:
        if self.p < 2 or not sympy.isprime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.e < 1:
            raise ValueError(f"ramification index must be positive, got {self.e}")

    def embeds_into(self, other: "TowerContext") -> bool:
        return self.p == other.p and other.e % self.e == 0

    def as_dict(self) -> dict:
        return {"p": self.p, "e": self.e}


class TowerElem:
    """Immutable element sum_i c_i pi^i of Q(pi), pi^e = p."""

    __slots__ = ("p", "e", "coeffs", "_val")

    def __init__(self, p: int, e: int, coeffs: Sequence[Union[int, Fraction]]) -> None:
        if len(coeffs) != e:
            raise ValueError(f"expected {e} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))
        object.__setattr__(self, "_val", None)

    def __setattr__(self, key, value):
        raise AttributeError("TowerElem is immutable")

    # ------------------------------------------------------------------
    @classmethod
    def rational(cls, q: Union[int, Fraction], p: int, e: int = 1) -> "TowerElem":
        coeffs = [Fraction(0)] * e
        coeffs[0] = Fraction(q)
        return cls(p, e, coeffs)

    @classmethod
    def zero(cls, p: int, e: int = 1) -> "TowerElem":
        return cls.rational(0, p, e)

    @classmethod
    def one(cls, p: int, e: int = 1) -> "TowerElem":
        return cls.rational(1, p, e)

    @classmethod
    def pi(cls, p: int, e: int) -> "TowerElem":
        if e == 1:
            return cls.rational(p, p, 1)
        coeffs = [Fraction(0)] * e
        coeffs[1] = Fraction(1)
        return cls(p, e, coeffs)

    @property
    def context(self) -> TowerContext:
        return TowerContext(self.p, self.e)

    # ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def val(self) -> ExtValue:
        if self._val is None:
            best: ExtValue = INF
            for i, c in enumerate(self.coeffs):
                if c != 0:
                    candidate = vp(c, self.p) + Fraction(i, self.e)
                    if candidate < best:
                        best = candidate
            object.__setattr__(self, "_val", best)
        return self._val

    def residue(self) -> int:
        v = self.val()
        if v < 0:
            raise NotIntegral(f"residue of element with valuation {v}", self.as_dict())
        return residue_of_rational(self.coeffs[0], self.p) if v == 0 else 0

    def embed(self, e2: int) -> "TowerElem":
        if e2 % self.e != 0:
            raise ValueError(f"cannot embed e={self.e} into e={e2}")
        if e2 == self.e:
            return self
        k = e2 // self.e
        coeffs = [Fraction(0)] * e2
        for i, c in enumerate(self.coeffs):
            coeffs[i * k] = c
        return TowerElem(self.p, e2, coeffs)

    def compressed(self) -> "TowerElem":
        """Same element written in the smallest tower containing it."""
        g = self.e
        for i, c in enumerate(self.coeffs):
            if c != 0 and i:
                g = math.gcd(g, i)
        if g == 1:
            return self
        return TowerElem(self.p, self.e // g, self.coeffs[::g])

    def truncate(self, prec: Union[int, Fraction]) -> "TowerElem":
        """Drop every p-adic digit of valuation >= prec (canonical digits)."""
        coeffs = []
        for i, c in enumerate(self.coeffs):
            bound = math.ceil(Fraction(prec) - Fraction(i, self.e))
            coeffs.append(truncate_rational(c, self.p, bound))
        return TowerElem(self.p, self.e, coeffs)

    def inverse(self) -> "TowerElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in tower")
        support = [i for i, c in enumerate(self.coeffs) if c != 0]
        if len(support) == 1:
            i = support[0]
            c = self.coeffs[i]
            coeffs = [Fraction(0)] * self.e
            if i == 0:
                coeffs[0] = 1 / c
            else:
                coeffs[self.e - i] = 1 / (c * self.p)
            return TowerElem(self.p, self.e, coeffs)
        num = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], _X, domain=sympy.QQ)
        modulus = sympy.Poly(_X ** self.e - self.p, _X, domain=sympy.QQ)
        inv = num.invert(modulus)
        raw = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        raw += [Fraction(0)] * (self.e - len(raw))
        return TowerElem(self.p, self.e, raw)

    def leading_digit(self) -> int:
        """Residue of self / uniformizer_of_valuation(v(self)); multiplicative mod p."""
        v = self.val()
        if v == INF:
            raise ZeroDivisionError("leading digit of zero")
        whole = math.floor(v)
        index = int((v - whole) * self.e)
        return residue_of_rational(self.coeffs[index] / Fraction(self.p) ** whole, self.p)

    def approx_inverse(self, prec: Union[int, Fraction]) -> "TowerElem":
        """y with v(self * y - 1) >= prec; Newton steps on truncated digits."""
        v = self.val()
        if v == INF:
            raise ZeroDivisionError("inverse of zero in tower")
        prec = max(Fraction(prec), Fraction(1))
        shift = uniformizer_of_valuation(v, self.p, self.e).inverse()
        unit = (self * shift).truncate(prec)
        y = TowerElem.rational(pow(self.leading_digit(), -1, self.p), self.p, self.e)
        reached = Fraction(1, self.e)
        while reached < prec:
            y = (y * (2 - unit * y)).truncate(prec)
            reached *= 2
        return y * shift

    # ------------------------------------------------------------------
    def _coerce(self, other: Scalar) -> Tuple["TowerElem", "TowerElem"]:
        if isinstance(other, TowerElem):
            if other.p != self.p:
                raise ValueError(f"mixing primes {self.p} and {other.p}")
            if other.e == self.e:
                return self, other
            e2 = self.e * other.e // math.gcd(self.e, other.e)
            return self.embed(e2), other.embed(e2)
        if isinstance(other, (int, Fraction)):
            return self, TowerElem.rational(other, self.p, self.e)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Scalar) -> "TowerElem":
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return TowerElem(a.p, a.e, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "TowerElem":
        return TowerElem(self.p, self.e, [-c for c in self.coeffs])

    def __sub__(self, other: Scalar) -> "TowerElem":
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return TowerElem(a.p, a.e, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other: Scalar) -> "TowerElem":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "TowerElem":
        if isinstance(other, (int, Fraction)):
            return TowerElem(self.p, self.e, [c * other for c in self.coeffs])
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        e = a.e
        out = [Fraction(0)] * e
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y == 0:
                    continue
                k = i + j
                if k < e:
                    out[k] += x * y
                else:
                    out[k - e] += x * y * a.p
        return TowerElem(a.p, e, out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "TowerElem":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in tower")
            return TowerElem(self.p, self.e, [c / other for c in self.coeffs])
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other: Scalar) -> "TowerElem":
        return TowerElem.rational(Fraction(other), self.p, self.e) / self

    def __pow__(self, n: int) -> "TowerElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = TowerElem.one(self.p, self.e)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, TowerElem) or other.p != self.p:
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        c = self.compressed()
        return hash((c.p, c.e, c.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if i == 0 else f"{c}*pi^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"TowerElem({body}; p={self.p}, e={self.e})"

    def as_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}


def common_e(values: Iterable[TowerElem]) -> int:
    e = 1
    for x in values:
        e = e * x.e // math.gcd(e, x.e)
    return e


def lift(value: Scalar, p: int, e: int = 1) -> TowerElem:
    if isinstance(value, TowerElem):
        return value if value.e == e else value.embed(e * value.e // math.gcd(e, value.e))
    return TowerElem.rational(Fraction(value), p, e)


def required_e(e: int, t: Union[int, Fraction]) -> int:
    """Smallest multiple of e whose value group contains t."""
    den = Fraction(t).denominator
    return e * den // math.gcd(e, den)


def uniformizer_of_valuation(t: Union[int, Fraction], p: int, e: int) -> TowerElem:
    """Return p^floor(t) * pi^((t - floor t) e), an element of valuation t."""
    t = Fraction(t)
    if (t * e).denominator != 1:
        raise ValueError(f"valuation {t} is not in (1/{e})Z")
    whole = math.floor(t)
    frac_index = int((t - whole) * e)
    coeffs = [Fraction(0)] * e
    coeffs[frac_index] = Fraction(p) ** whole
    return TowerElem(p, e, coeffs)


def ext_str(value: ExtValue) -> str:
    if value == INF:
        return "inf"
    if value == -INF:
        return "-inf"
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


__all__ = [
    "INF",
    "ExtValue",
    "TowerContext",
    "TowerElem",
    "vp",
    "vp_int",
    "residue_of_rational",
    "truncate_rational",
    "common_e",
    "lift",
    "required_e",
    "uniformizer_of_valuation",
    "ext_str",
]

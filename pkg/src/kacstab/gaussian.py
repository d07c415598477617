"""Gaussian rationals and exact phases on the universal cover of the circle."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import ParseError, ZeroCharge


@dataclass(frozen=True)
class GQ:
    """x + y·i with rational x, y."""

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __add__(self, o):
        o = as_gq(o)
        return GQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = as_gq(o)
        return GQ(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return GQ(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return GQ(self.re * o, self.im * o)
        o = as_gq(o)
        return GQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return GQ(self.re / o, self.im / o)
        o = as_gq(o)
        n = o.norm2()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return (self * o.conj()) / n

    def __bool__(self):
        return bool(self.re or self.im)

    def conj(self) -> "GQ":
        return GQ(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GQ({format_gq(self)})"

    def in_semiclosed_upper(self) -> bool:
        """Membership in ℍ₋: Im > 0, or Im = 0 and Re < 0."""
        return self.im > 0 or (self.im == 0 and self.re < 0)


def as_gq(x) -> GQ:
    if isinstance(x, GQ):
        return x
    if isinstance(x, complex):
        return GQ(Fraction(x.real), Fraction(x.imag))
    return GQ(Fraction(x), 0)


def cross(a: GQ, b: GQ) -> Fraction:
    """Im(conj(a)·b); positive iff b is counter-clockwise from a (within π)."""
    return a.re * b.im - a.im * b.re


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_gq(z: GQ) -> str:
    sign = "+" if z.im >= 0 else "-"
    return f"{_compact(z.re)}{sign}{_compact(abs(z.im))}i"


def _compact(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_TERM = re.compile(r"[+-]?[^+-]+")


def parse_gq(text: str) -> GQ:
    """Parse forms like ``-1+1i``, ``3/5+4/5i``, ``i``, ``-2``, ``1/2-i``."""
    s = text.strip().replace(" ", "").replace("*", "")
    if not s:
        raise ParseError("empty Gaussian rational")
    terms = _TERM.findall(s)
    if "".join(terms) != s:
        raise ParseError(f"cannot parse Gaussian rational {text!r}")
    re_part, im_part = Fraction(0), Fraction(0)
    try:
        for t in terms:
            if t.endswith(("i", "j")):
                mag = t[:-1]
                if mag in ("", "+", "-"):
                    mag += "1"
                im_part += Fraction(mag)
            else:
                re_part += Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse Gaussian rational {text!r}") from exc
    return GQ(re_part, im_part)


@total_ordering
class PhaseKey:
    """Phase φ = arg(z)/π + 2·sheet with base value arg(z)/π taken in (0, 2].

    All comparisons are exact: the integer ``level`` (number of half turns
    completed) is compared first, then a cross-product sign.
    """

    __slots__ = ("z", "sheet", "level")

    def __init__(self, z: GQ, sheet: int = 0):
        z = as_gq(z)
        if not z:
            raise ZeroCharge("phase of the zero vector is undefined")
        self.z = z
        self.sheet = sheet
        self.level = 2 * sheet + (0 if z.in_semiclosed_upper() else 1)

    def shift(self, m: int) -> "PhaseKey":
        """φ + m (the object shifted by [m])."""
        z = self.z if m % 2 == 0 else -self.z
        half = 0 if z.in_semiclosed_upper() else 1
        return PhaseKey(z, (self.level + m - half) // 2)

    def __sub__(self, other: "PhaseKey") -> "PhaseKey":
        w = self.z * other.z.conj()
        base_gt = PhaseKey(self.z) > PhaseKey(other.z)
        return PhaseKey(w, self.sheet - other.sheet + (0 if base_gt else -1))

    def __eq__(self, other):
        if not isinstance(other, PhaseKey):
            return NotImplemented
        return self.level == other.level and cross(self.z, other.z) == 0

    def __lt__(self, other: "PhaseKey"):
        if self.level != other.level:
            return self.level < other.level
        return cross(self.z, other.z) > 0

    def __hash__(self):
        m = max(abs(self.z.re), abs(self.z.im))
        return hash((self.level, self.z.re / m, self.z.im / m))

    def folded(self) -> "PhaseKey":
        """Representative of φ mod 1 in (0, 1]."""
        z = self.z if self.z.in_semiclosed_upper() else -self.z
        return PhaseKey(z, 0)

    @property
    def value(self) -> float:
        base = math.atan2(float(self.z.im), float(self.z.re)) / math.pi
        if base <= 0:
            base += 2
        exact = self.exact()
        if exact is not None:
            return float(exact)
        return base + 2 * self.sheet

    def exact(self) -> Fraction | None:
        """Exact value when the angle is a multiple of π/4, else None."""
        x, y = self.z.re, self.z.im
        if y == 0:
            base = Fraction(1) if x < 0 else Fraction(2)
        elif x == 0:
            base = Fraction(1, 2) if y > 0 else Fraction(3, 2)
        elif abs(x) == abs(y):
            base = {(1, 1): Fraction(1, 4), (-1, 1): Fraction(3, 4),
                    (-1, -1): Fraction(5, 4), (1, -1): Fraction(7, 4)}[(_sgn(x), _sgn(y))]
        else:
            return None
        return base + 2 * self.sheet

    def __repr__(self):
        ex = self.exact()
        shown = format_fraction(ex) if ex is not None else f"{self.value:.17g}"
        return f"PhaseKey({shown})"

    def to_json(self) -> dict:
        ex = self.exact()
        out = {"point": format_gq(self.z), "sheet": self.sheet,
               "display": float(f"{self.value:.17g}")}
        if ex is not None:
            out["exact"] = format_fraction(ex)
        return out


def _sgn(x) -> int:
    return 1 if x > 0 else -1

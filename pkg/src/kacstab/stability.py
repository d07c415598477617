"""Central charges on the standard heart and the class-level stability data.

Generic ext between dimension vectors is computed by the recursion

    ext(α, β) = max { -<α, β''> : β -> β'' a generic quotient }

where β'' = β - β' ranges over quotients by generic subrepresentations, and
β' is a generic sub of β iff ext(β', β - β') = 0.  Both sides shrink in total
height, so the recursion terminates; results are memoised in
:class:`GenericHomTable`.
"""

from __future__ import annotations

import itertools
from math import gcd
from operator import mul
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BoundExceeded, EmptySet, NotAStabilityFunction, NotBelow, NotUnit, ZeroVector
from .gaussian import GQ, PhaseKey, as_gq, cross, parse_gq
from .quiver import FormPair
from .roots import RootData, Vector, height

DEFAULT_CAP = 12
DEFAULT_TABLE_BUDGET = 2 * 10**6


@dataclass(frozen=True)
class CentralCharge:
    values: tuple[GQ, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, lam: Sequence[int]) -> GQ:
        return charge_of_class(self, lam)

    def to_json(self) -> list[list[int]]:
        return [[z.re.numerator, z.re.denominator, z.im.numerator, z.im.denominator]
                for z in self.values]


def validate_charge(values: Iterable) -> CentralCharge:
    vals = tuple(as_gq(v) if not isinstance(v, str) else parse_gq(v) for v in values)
    for i, z in enumerate(vals, 1):
        if not z.in_semiclosed_upper():
            raise NotAStabilityFunction(i)
    return CentralCharge(vals)


def parse_charge(spec) -> CentralCharge:
    """Accept ``"charge a b ..."``, ``"a,b,..."`` or JSON ``[[xn,xd,yn,yd], ...]``."""
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("["):
            import json
            return parse_charge(json.loads(s))
        if s.startswith("charge"):
            s = s[len("charge"):]
        parts = [p for p in s.replace(",", " ").split() if p]
        return validate_charge(parse_gq(p) for p in parts)
    vals = []
    for item in spec:
        if isinstance(item, str):
            vals.append(parse_gq(item))
        else:
            xn, xd, yn, yd = item
            vals.append(GQ(Fraction(xn, xd), Fraction(yn, yd)))
    return validate_charge(vals)


def charge_of_class(Z: CentralCharge, lam: Sequence[int]) -> GQ:
    re = sum((c * z.re for c, z in zip(lam, Z.values)), Fraction(0))
    im = sum((c * z.im for c, z in zip(lam, Z.values)), Fraction(0))
    return GQ(re, im)


def phase(Z: CentralCharge, lam: Sequence[int], sheet: int = 0) -> PhaseKey:
    return PhaseKey(charge_of_class(Z, lam), sheet)


def linf(lam: Sequence) -> Fraction:
    return max(abs(Fraction(x)) for x in lam)


def f_Z_squared(Z: CentralCharge, lam: Sequence) -> Fraction:
    """|Z(λ)|² / ‖λ‖∞²; works for rational λ as well."""
    if not any(lam):
        raise ZeroVector("f_Z is undefined at 0")
    w = GQ(sum((Fraction(c) * z.re for c, z in zip(lam, Z.values)), Fraction(0)),
           sum((Fraction(c) * z.im for c, z in zip(lam, Z.values)), Fraction(0)))
    return w.norm2() / linf(lam) ** 2


def _below(beta: Sequence[int]):
    return itertools.product(*(range(b + 1) for b in beta))


def _above_threshold(r: Sequence[int], b: Sequence[int], thresh: int):
    """Vectors 0 <= sub <= b with r·sub > thresh, pruning on the best possible remainder."""
    n = len(b)
    best_rest = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        best_rest[k] = best_rest[k + 1] + max(0, r[k]) * b[k]
    cur = [0] * n

    def rec(k, acc):
        if acc + best_rest[k] <= thresh:
            return
        if k == n:
            yield tuple(cur), acc
            return
        for x in range(b[k] + 1):
            cur[k] = x
            yield from rec(k + 1, acc + r[k] * x)
        cur[k] = 0

    yield from rec(0, 0)


def _arrows_from_euler(f: FormPair):
    n = f.n
    return [((i, j), -f.euler[i][j]) for i in range(n) for j in range(n)
            if i != j and f.euler[i][j] < 0]


class GenericHomTable:
    """Memoised generic hom/ext between dimension vectors of one quiver."""

    def __init__(self, f: FormPair, cap: int = DEFAULT_CAP, budget: int = DEFAULT_TABLE_BUDGET):
        self.f = f
        self.cap = cap
        self.budget = budget
        self._ext: dict[tuple[Vector, Vector], int] = {}
        self._subs: dict[Vector, tuple[Vector, ...]] = {}
        self._lock = threading.Lock()
        self._arrows = [((s - 1, t - 1), m) for (s, t), m in f.quiver.arrows.items()] \
            if f.quiver is not None else _arrows_from_euler(f)

    def _row(self, a):
        E, n = self.f.euler, len(a)
        return tuple(sum(a[i] * E[i][j] for i in range(n)) for j in range(n))

    def _check(self, v: Sequence[int]):
        if any(x < 0 for x in v):
            raise ValueError(f"{tuple(v)} is not a dimension vector")
        if any(x > self.cap for x in v):
            raise BoundExceeded(f"{tuple(v)} exceeds the working bound {self.cap}")

    def ext(self, a: Sequence[int], b: Sequence[int]) -> int:
        a, b = tuple(a), tuple(b)
        key = (a, b)
        hit = self._ext.get(key)
        if hit is not None:
            return hit
        self._check(a)
        self._check(b)
        if not any(a) or not any(b):
            val = 0
        else:
            # -<a, b - sub> = base + r·sub with r = aᵀE; the zero sub always
            # qualifies, and Ext¹ is a quotient of ⊕ Hom(V_s, W_t) over arrows
            r = self._row(a)
            base = -sum(map(mul, r, b))
            val = max(0, base)
            top = sum(m * a[s] * b[t] for (s, t), m in self._arrows)
            cands = []
            if top > val:
                for sub, gain in _above_threshold(r, b, val - base):
                    cand = base + gain
                    if cand <= top and any(sub) and sub != b:
                        cands.append((-cand, sub))
            cands.sort()
            for neg, sub in cands:
                quot = tuple(x - y for x, y in zip(b, sub))
                # ext = 0 forces <sub, quot> = hom >= 0
                if self.f.chi(sub, quot) >= 0 and self.ext(sub, quot) == 0:
                    val = -neg
                    break
        with self._lock:
            if len(self._ext) >= self.budget:
                raise BoundExceeded(f"generic hom table exceeded {self.budget} entries")
            self._ext.setdefault(key, val)
        return val

    def hom(self, a: Sequence[int], b: Sequence[int]) -> int:
        return self.f.chi(a, b) + self.ext(a, b)

    def is_sub(self, beta: Sequence[int], alpha: Sequence[int]) -> bool:
        if any(x > y for x, y in zip(beta, alpha)) or any(x < 0 for x in beta):
            raise NotBelow(f"{tuple(beta)} is not below {tuple(alpha)}")
        rest = tuple(y - x for x, y in zip(beta, alpha))
        if not any(beta) or not any(rest):
            return True
        return self.f.chi(beta, rest) >= 0 and self.ext(beta, rest) == 0

    def subs(self, alpha: Sequence[int]) -> tuple[Vector, ...]:
        """Dimension vectors 0 < β < α of subrepresentations of a general α-rep."""
        alpha = tuple(alpha)
        hit = self._subs.get(alpha)
        if hit is not None:
            return hit
        self._check(alpha)
        out = tuple(b for b in _below(alpha)
                    if any(b) and b != alpha and self.is_sub(b, alpha))
        with self._lock:
            self._subs.setdefault(alpha, out)
        return out

    def __len__(self):
        return len(self._ext)


def generic_ext(table: GenericHomTable, beta: Sequence[int], gamma: Sequence[int]) -> int:
    return table.ext(beta, gamma)


def generic_hom(table: GenericHomTable, beta: Sequence[int], gamma: Sequence[int]) -> int:
    return table.hom(beta, gamma)


def generic_sub(table: GenericHomTable, beta: Sequence[int], alpha: Sequence[int]) -> bool:
    return table.is_sub(beta, alpha)


def _integer_charge(Z: CentralCharge) -> list[tuple[int, int]]:
    """Z scaled by a positive common denominator; cross-product signs are unchanged."""
    den = 1
    for z in Z.values:
        den = den * z.re.denominator // gcd(den, z.re.denominator)
        den = den * z.im.denominator // gcd(den, z.im.denominator)
    return [(int(z.re * den), int(z.im * den)) for z in Z.values]


def _destabilisers(Z: CentralCharge, table: GenericHomTable, alpha: Sequence[int]):
    alpha = tuple(alpha)
    iz = _integer_charge(Z)
    ax = sum(c * x for c, (x, _) in zip(alpha, iz))
    ay = sum(c * y for c, (_, y) in zip(alpha, iz))
    for b in _below(alpha):
        bx = sum(c * x for c, (x, _) in zip(b, iz))
        by = sum(c * y for c, (_, y) in zip(b, iz))
        # φ(β) > φ(α) inside ℍ₋ iff β's charge is counter-clockwise from α's
        if ax * by - ay * bx > 0 and any(b) and b != alpha and table.is_sub(b, alpha):
            yield b


def is_semistable_class(Z: CentralCharge, table: GenericHomTable, alpha: Sequence[int]) -> bool:
    return next(_destabilisers(Z, table, alpha), None) is None


def destabilising_witness(Z: CentralCharge, table: GenericHomTable, alpha: Sequence[int]):
    """Some generic sub of strictly larger phase, or None."""
    return next(_destabilisers(Z, table, alpha), None)


def hn_classes(Z: CentralCharge, table: GenericHomTable, alpha: Sequence[int]) -> list[tuple[Vector, PhaseKey]]:
    """Class-level HN filtration: peel off the maximal-phase generic sub, repeat on the quotient."""
    alpha = tuple(alpha)
    out: list[tuple[Vector, PhaseKey]] = []
    while any(alpha):
        cands = list(table.subs(alpha)) + [alpha]
        best = max(cands, key=lambda b: (phase(Z, b), height(b), b))
        out.append((best, phase(Z, best)))
        alpha = tuple(x - y for x, y in zip(alpha, best))
    return out


def semistable_classes_up_to(Z: CentralCharge, table: GenericHomTable,
                             roots: RootData) -> list[tuple[Vector, PhaseKey]]:
    """Semistable positive roots within the bound, with phases, in lexicographic order."""
    return [(r, phase(Z, r)) for r in roots.positive_roots()
            if is_semistable_class(Z, table, r)]


@dataclass(frozen=True)
class SupportData:
    eps2: Fraction
    norm2: Fraction
    argmin: Vector
    exact_norm: bool = True

    def to_json(self) -> dict:
        from .gaussian import format_fraction
        return {"eps2": format_fraction(self.eps2), "norm2": format_fraction(self.norm2),
                "argmin": list(self.argmin), "exact_norm": self.exact_norm}


def charge_norm_squared(Z: CentralCharge) -> tuple[Fraction, bool]:
    """sup of f_Z² over the unit ℓ∞ sphere: attained at a vertex of the cube."""
    n = Z.n
    if n > 20:
        bound = sum((abs(z.re) + abs(z.im) for z in Z.values), Fraction(0))
        return bound * bound, False
    best = Fraction(0)
    for signs in itertools.product((1, -1), repeat=n - 1):
        s = (1,) + signs
        best = max(best, charge_of_class(Z, s).norm2())
    return best, True


def support_constant(Z: CentralCharge, ss: Sequence[tuple[Vector, PhaseKey]]) -> SupportData:
    if not ss:
        raise EmptySet("no semistable classes within the bound")
    vals = [(f_Z_squared(Z, r), r) for r, _ in ss]
    eps2, arg = min(vals)
    norm2, exact = charge_norm_squared(Z)
    return SupportData(eps2, norm2, arg, exact)


def rotate_charge(Z: CentralCharge, u) -> tuple[tuple[GQ, ...], PhaseKey]:
    """Multiply every value by a unit u (a Gaussian rational or a quarter-turn count).

    Returns the rotated values and the phase shift they induce.
    """
    if isinstance(u, int):
        q = u
        w = GQ(1, 0)
        for _ in range(q % 4):
            w = w * GQ(0, 1)
        shift_val = Fraction(q, 2)
        base = PhaseKey(w).exact()
        sheet = int((shift_val - base) / 2)
        shift = PhaseKey(w, sheet)
    else:
        w = as_gq(u)
        if w.norm2() != 1:
            raise NotUnit(f"|u|² = {w.norm2()} != 1")
        shift = PhaseKey(w, 0)
        if shift.level == 1:
            shift = PhaseKey(w, -1)
    return tuple(z * w for z in Z.values), shift

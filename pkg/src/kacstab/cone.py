"""Imaginary cone, the fattened set A(σ), phase gaps and algebraic-heart certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import InconsistentType, NoGap, NotABasis, WindowOverflow
from .gaussian import GQ, PhaseKey, format_gq
from .linalg import det, primitive, solve
from .quiver import FormPair, Kind, QuiverType
from .roots import Vector, height, is_positive
from .stability import CentralCharge, charge_of_class, f_Z_squared, phase


class ConeKind(Enum):
    EMPTY = "empty"
    RAY = "ray"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class ImaginaryCone:
    kind: ConeKind
    generators: tuple[Vector, ...] = ()
    bound: int = 0

    @property
    def delta(self) -> Vector | None:
        return self.generators[0] if self.kind is ConeKind.RAY else None

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "generators": [list(g) for g in self.generators],
                "bound": self.bound}


def imaginary_cone(t: QuiverType, roots: Sequence[Vector], h: int = 0) -> ImaginaryCone:
    pos = sorted({tuple(r) for r in roots if is_positive(r)})
    if t.kind is Kind.FINITE:
        if pos:
            raise InconsistentType("finite-type quiver with imaginary roots")
        return ImaginaryCone(ConeKind.EMPTY, (), h)
    if t.kind is Kind.AFFINE:
        return ImaginaryCone(ConeKind.RAY, (t.delta,), h)
    if not pos:
        return ImaginaryCone(ConeKind.EMPTY, (), h)
    # one generator per ray, the smallest representative
    rays: dict[Vector, Vector] = {}
    for r in sorted(pos, key=lambda v: (height(v), v)):
        rays.setdefault(primitive(r), r)
    return ImaginaryCone(ConeKind.SAMPLED, tuple(sorted(rays.values())), h)


@dataclass(frozen=True)
class ConeComponent:
    sign: int
    lo: PhaseKey
    hi: PhaseKey
    lo_witness: Vector
    hi_witness: Vector
    members: tuple[Vector, ...] = ()

    def negated(self) -> "ConeComponent":
        return ConeComponent(-self.sign, self.lo.shift(1), self.hi.shift(1),
                             tuple(-x for x in self.lo_witness), tuple(-x for x in self.hi_witness),
                             tuple(tuple(-x for x in m) for m in self.members))

    def to_json(self) -> dict:
        return {"sign": "+" if self.sign > 0 else "-", "lo": self.lo.to_json(),
                "hi": self.hi.to_json(), "lo_witness": list(self.lo_witness),
                "hi_witness": list(self.hi_witness), "members": [list(m) for m in self.members]}


def _quad_nonneg_on_unit(a2: Fraction, a1: Fraction, a0: Fraction) -> bool:
    """a2 t² + a1 t + a0 >= 0 for every t in [0, 1]."""
    if a0 < 0 or a2 + a1 + a0 < 0:
        return False
    if a2 > 0:
        t = -a1 / (2 * a2)
        if 0 < t < 1 and a2 * t * t + a1 * t + a0 < 0:
            return False
    return True


def segment_in_region(Z: CentralCharge, eps2: Fraction, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether f_Z² >= eps2 along the segment between a/|a| and b/|b| (height-normalised).

    On a segment inside L⁺ the ℓ∞ norm is the largest coordinate, so the test
    splits into one quadratic inequality per coordinate.
    """
    ha, hb = height(a), height(b)
    pa = [Fraction(x, ha) for x in a]
    pb = [Fraction(x, hb) for x in b]
    za = GQ(sum((x * z.re for x, z in zip(pa, Z.values)), Fraction(0)),
            sum((x * z.im for x, z in zip(pa, Z.values)), Fraction(0)))
    zb = GQ(sum((x * z.re for x, z in zip(pb, Z.values)), Fraction(0)),
            sum((x * z.im for x, z in zip(pb, Z.values)), Fraction(0)))
    d = zb - za
    A = d.norm2()
    B = 2 * (za.re * d.re + za.im * d.im)
    C = za.norm2()
    for x, y in zip(pa, pb):
        dx = y - x
        if not _quad_nonneg_on_unit(A - eps2 * dx * dx, B - 2 * eps2 * x * dx, C - eps2 * x * x):
            return False
    return True


def build_A_sigma(cone: ImaginaryCone, Z: CentralCharge, eps2: Fraction,
                  norm2: Fraction) -> list[ConeComponent]:
    """Components of {λ in the cone : eps2 <= f_Z(λ)² <= norm2} as phase intervals."""
    if cone.kind is ConeKind.EMPTY:
        return []
    live = [g for g in cone.generators if eps2 <= f_Z_squared(Z, g) <= norm2]
    if not live:
        return []
    parent = list(range(len(live)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(live)):
        for j in range(i + 1, len(live)):
            if find(i) != find(j) and segment_in_region(Z, eps2, live[i], live[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[Vector]] = {}
    for i, g in enumerate(live):
        groups.setdefault(find(i), []).append(g)
    comps = []
    for members in groups.values():
        lo = min(members, key=lambda g: (phase(Z, g), g))
        hi = max(members, key=lambda g: (phase(Z, g), g))
        plus = ConeComponent(1, phase(Z, lo), phase(Z, hi), lo, hi, tuple(sorted(members)))
        comps += [plus, plus.negated()]
    comps.sort(key=lambda c: (c.sign < 0, c.lo, c.lo_witness))
    return comps


@dataclass(frozen=True)
class GapCertificate:
    theta: PhaseKey
    theta_prime: PhaseKey
    anchor: PhaseKey
    occupied: tuple[PhaseKey, ...]
    intervals: tuple[tuple[PhaseKey, PhaseKey], ...]
    components: tuple[ConeComponent, ...] = ()

    @property
    def width(self) -> PhaseKey:
        return self.theta_prime - self.theta

    def contains(self, p: PhaseKey) -> bool:
        """Whether p lies in the open arc (θ, θ') modulo 1."""
        f = p.folded()
        for k in range(-1, 3):
            q = f.shift(k)
            if self.theta < q < self.theta_prime:
                return True
        return False

    def to_json(self) -> dict:
        return {"theta": self.theta.to_json(), "theta_prime": self.theta_prime.to_json(),
                "separating": [format_gq(self.theta.z), format_gq(self.theta_prime.z)],
                "anchor": self.anchor.to_json(),
                "occupied_phases": [p.to_json() for p in self.occupied],
                "intervals": [[a.to_json(), b.to_json()] for a, b in self.intervals],
                "components": [c.to_json() for c in self.components]}


def _anchor(theta: PhaseKey, theta_prime: PhaseKey) -> PhaseKey:
    width = theta_prime - theta
    if width == PhaseKey(GQ(-1, 0)):
        w = theta.z * GQ(0, 1)
    else:
        w = theta.z / theta.z.norm2() + theta_prime.z / theta_prime.z.norm2()
    for s in range(theta.sheet - 1, theta_prime.sheet + 2):
        cand = PhaseKey(w, s)
        if theta < cand < theta_prime:
            return cand
    raise NoGap("could not place a separating direction inside the arc")


def phase_gap(components: Sequence[ConeComponent], ss: Sequence[tuple[Vector, PhaseKey]]) -> GapCertificate:
    """Largest open arc of the phase circle (mod 1) avoiding every occupied phase."""
    items: list[tuple[PhaseKey, PhaseKey]] = []
    for _, p in ss:
        f = p.folded()
        items.append((f, f))
    for c in components:
        if c.sign > 0:
            items.append((c.lo.folded(), c.hi.folded()))
    if not items:
        raise NoGap("nothing occupied: no semistable classes supplied")
    items.sort(key=lambda iv: (iv[0], iv[1]))
    merged: list[list[PhaseKey]] = []
    for lo, hi in items:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    best = None
    for k, (lo, hi) in enumerate(merged):
        nxt = merged[k + 1][0] if k + 1 < len(merged) else merged[0][0].shift(1)
        width = nxt - hi
        if best is None or width > best[0]:
            best = (width, hi, nxt)
    width, left, right = best
    if not width > PhaseKey(GQ(1, 0), -1):
        raise NoGap(f"occupied phases leave no open arc; intervals={merged}")
    occupied = tuple(sorted({p.folded() for _, p in ss}))
    return GapCertificate(left, right, _anchor(left, right), occupied,
                          tuple((a, b) for a, b in merged), tuple(components))


@dataclass(frozen=True)
class HeartSimple:
    cls: Vector
    phase: PhaseKey
    root: Vector
    shift: int

    def to_json(self) -> dict:
        return {"class": list(self.cls), "root": list(self.root), "shift": self.shift,
                "phase": self.phase.to_json()}


@dataclass(frozen=True)
class HeartCertificate:
    theta: PhaseKey
    simples: tuple[HeartSimple, ...]
    basis_matrix: tuple[tuple[int, ...], ...]
    det: int
    windowed: tuple[HeartSimple, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {"theta": self.theta.to_json(), "simples": [s.to_json() for s in self.simples],
                "basis_matrix": [list(r) for r in self.basis_matrix], "det": self.det}

    def key(self) -> frozenset:
        return frozenset((s.root, s.shift) for s in self.simples)


def window_classes(anchor: PhaseKey, ss: Sequence[tuple[Vector, PhaseKey]]) -> list[HeartSimple]:
    """Sheet-shift every semistable root into the window (anchor, anchor + 1]."""
    top = anchor.shift(1)
    out = []
    for root, p in ss:
        for k in range(anchor.level - 2, anchor.level + 3):
            q = p.shift(k)
            if anchor < q <= top:
                sign = -1 if k % 2 else 1
                out.append(HeartSimple(tuple(sign * x for x in root), q, tuple(root), k))
                break
    return out


def _positive_functional(anchor: PhaseKey):
    w = anchor.z.conj()

    def ell(Z: CentralCharge, v: Sequence[int]) -> Fraction:
        return (charge_of_class(Z, v) * w).im

    return ell


def _in_monoid(target: Vector, gens: list[Vector], weights: dict, budget: int = 20000) -> bool:
    """Whether target is a nonnegative integer combination of gens (bounded DFS)."""
    seen = set()
    stack = [target]
    while stack and len(seen) < budget:
        v = stack.pop()
        if not any(v):
            return True
        if v in seen:
            continue
        seen.add(v)
        wv = weights(v)
        if wv <= 0:
            continue
        for g in gens:
            if weights(g) <= wv:
                stack.append(tuple(a - b for a, b in zip(v, g)))
    return False


def heart_simples(gap: GapCertificate, ss: Sequence[tuple[Vector, PhaseKey]], f: FormPair,
                  Z: CentralCharge | None = None, theta: PhaseKey | None = None,
                  table=None) -> HeartCertificate:
    """Extract the simple classes of P(θ, θ+1] from the windowed semistable roots.

    With a generic hom table, each simple must also be a real Schur root: simples
    of a finite-length heart over a hereditary algebra are exceptional, so an
    imaginary or non-rigid candidate means the bound truncated the true gap.
    """
    n = f.n
    anchor = theta if theta is not None else gap.theta
    win = window_classes(anchor, ss)
    classes = {s.cls for s in win}
    minimal = [s for s in win
               if not any(tuple(c - a for c, a in zip(s.cls, o.cls)) in classes
                          for o in win if o.cls != s.cls)]
    if len(minimal) > n and Z is not None:
        # strictly inside the window whenever θ is the gap's own endpoint
        ell = _positive_functional(gap.anchor if theta is None else anchor)
        weights = lambda v: ell(Z, v)
        keep = []
        for s in minimal:
            others = [o.cls for o in minimal if o.cls != s.cls]
            if not _in_monoid(s.cls, others, weights):
                keep.append(s)
        minimal = keep
    if len(minimal) > n:
        raise WindowOverflow(f"{len(minimal)} minimal generators for rank {n}: "
                             f"{[list(s.cls) for s in minimal]}")
    if len(minimal) < n:
        raise NotABasis(f"only {len(minimal)} minimal generators for rank {n}")
    minimal.sort(key=lambda s: s.cls)
    basis = tuple(tuple(s.cls) for s in minimal)
    d = det(basis)
    if abs(d) != 1:
        raise NotABasis(f"simple classes have determinant {d}")
    if table is not None:
        for s in minimal:
            if f.tits(s.root) != 2 or table.ext(s.root, s.root) != 0:
                raise NotABasis(f"simple candidate {list(s.root)} is not a real Schur root")
    cols = [list(r) for r in zip(*basis)]
    for s in win:
        x = solve(cols, s.cls)
        if x is None or any(c < 0 or c.denominator != 1 for c in x):
            raise NotABasis(f"windowed class {list(s.cls)} is not an N-combination of the simples")
    return HeartCertificate(anchor, tuple(minimal), basis, int(d), tuple(win))

"""Full σ-exceptional collections read off from a certified heart."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .cone import HeartCertificate
from .errors import NoAdmissibleOrder
from .gaussian import PhaseKey
from .linalg import det
from .quiver import FormPair
from .roots import Vector, shift_sign
from .stability import GenericHomTable


@dataclass(frozen=True)
class ExceptionalEntry:
    root: Vector
    shift: int
    phase: PhaseKey

    @property
    def signed(self) -> Vector:
        return tuple(x * shift_sign(self.shift) for x in self.root)

    def to_json(self) -> dict:
        return {"root": list(self.root), "shift": self.shift, "phase": self.phase.to_json()}


@dataclass(frozen=True)
class ExceptionalCollection:
    entries: tuple[ExceptionalEntry, ...]
    theta: PhaseKey

    def shifted(self, m: int) -> "ExceptionalCollection":
        return ExceptionalCollection(
            tuple(ExceptionalEntry(e.root, e.shift + m, e.phase.shift(m)) for e in self.entries),
            self.theta.shift(m))

    def reversed(self) -> "ExceptionalCollection":
        return ExceptionalCollection(tuple(reversed(self.entries)), self.theta)

    def key(self) -> tuple:
        return tuple((e.root, e.shift) for e in self.entries)

    def to_json(self) -> dict:
        return {"theta": self.theta.to_json(), "entries": [e.to_json() for e in self.entries]}


def _graded(table: GenericHomTable, a: ExceptionalEntry, b: ExceptionalEntry) -> dict[int, int]:
    """Nonzero dim Hom^p(a, b) keyed by p, from generic hom/ext of the underlying roots."""
    out = {}
    h = table.hom(a.root, b.root)
    e = table.ext(a.root, b.root)
    # Hom^p(γ[k], γ'[k']) = Hom^{p + k' - k}(γ, γ')
    if h:
        out[a.shift - b.shift] = h
    if e:
        out[a.shift - b.shift + 1] = out.get(a.shift - b.shift + 1, 0) + e
    return out


def extract_sigma_exceptional(h: HeartCertificate, f: FormPair,
                              table: GenericHomTable | None = None) -> ExceptionalCollection:
    """Order the heart simples so that Hom•(E_i, E_j) = 0 whenever i > j."""
    table = table or GenericHomTable(f)
    items = [ExceptionalEntry(s.root, s.shift, s.phase) for s in h.simples]
    n = len(items)
    succ = {i: set() for i in range(n)}
    indeg = [0] * n
    for a in range(n):
        for b in range(n):
            if a != b and _graded(table, items[a], items[b]):
                succ[a].add(b)
                indeg[b] += 1
    ready = [(items[i].root, items[i].shift, i) for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        *_, i = heapq.heappop(ready)
        order.append(i)
        for j in sorted(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, (items[j].root, items[j].shift, j))
    if len(order) != n:
        stuck = [list(items[i].root) for i in range(n) if i not in order]
        raise NoAdmissibleOrder(f"vanishing digraph has a cycle through {stuck}")
    return ExceptionalCollection(tuple(items[i] for i in order), h.theta.shift(1))


@dataclass
class ExceptionalReport:
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, detail: str):
        self.violations.append({"check": check, "detail": detail})

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations}


def verify_exceptional(c: ExceptionalCollection, f: FormPair,
                       table: GenericHomTable | None = None) -> ExceptionalReport:
    table = table or GenericHomTable(f)
    rep = ExceptionalReport()
    es = c.entries
    for e in es:
        if f.tits(e.root) != 2 or table.hom(e.root, e.root) != 1 or table.ext(e.root, e.root) != 0:
            rep.add("exceptional", f"{list(e.root)} is not a real Schur root")
    for i, a in enumerate(es):
        for j, b in enumerate(es):
            if i == j:
                continue
            g = _graded(table, a, b)
            if i > j and g:
                rep.add("order", f"Hom•(E{i + 1}, E{j + 1}) nonzero in degrees {sorted(g)}")
            bad = [p for p in g if p <= 0]
            if bad:
                rep.add("ext", f"Hom^p(E{i + 1}, E{j + 1}) nonzero for p = {sorted(bad)}")
            if len(g) > 1:
                rep.add("monochromatic", f"Hom•(E{i + 1}, E{j + 1}) spans degrees {sorted(g)}")
    low = c.theta.shift(-1)
    for i, e in enumerate(es):
        if not (low < e.phase <= c.theta):
            rep.add("phase", f"E{i + 1} has phase {e.phase!r} outside (θ−1, θ]")
    if es:
        d = det([e.signed for e in es])
        if abs(d) != 1:
            rep.add("unimodular", f"classes have determinant {d}")
    return rep

"""Quivers, their Euler and Cartan forms, and the finite/affine/indefinite split."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InternalError, ParseError, ValidationError
from .linalg import ldlt, nullspace, primitive

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    """A finite connected acyclic quiver on vertices 1..n.

    ``arrows`` maps an ordered pair ``(source, target)`` to its multiplicity.
    """

    n: int
    arrows: Mapping[tuple[int, int], int] = field(default_factory=dict)
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        clean = {k: v for k, v in sorted(dict(self.arrows).items()) if v}
        object.__setattr__(self, "arrows", clean)
        _validate(self)

    def __hash__(self):
        return hash((self.n, tuple(self.arrows.items())))

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.n == other.n
                and self.arrows == other.arrows)

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[tuple[int, int]], labels=None) -> "Quiver":
        counts: dict[tuple[int, int], int] = {}
        for s, t in arrows:
            counts[(s, t)] = counts.get((s, t), 0) + 1
        return cls(n, counts, tuple(labels) if labels else None)

    def q(self, i: int, j: int) -> int:
        """Number of arrows i -> j."""
        return self.arrows.get((i, j), 0)

    def arrow_list(self) -> list[tuple[int, int]]:
        """Arrows expanded by multiplicity, in sorted order."""
        out = []
        for (s, t), m in self.arrows.items():
            out.extend([(s, t)] * m)
        return out

    def neighbours(self, i: int) -> set[int]:
        return {t for (s, t) in self.arrows if s == i} | {s for (s, t) in self.arrows if t == i}

    def is_sink(self, i: int) -> bool:
        return not any(s == i for (s, _) in self.arrows)

    def is_source(self, i: int) -> bool:
        return not any(t == i for (_, t) in self.arrows)

    def reflect_at(self, i: int) -> "Quiver":
        """Reverse every arrow incident to ``i``."""
        counts: dict[tuple[int, int], int] = {}
        for (s, t), m in self.arrows.items():
            key = (t, s) if i in (s, t) else (s, t)
            counts[key] = counts.get(key, 0) + m
        return Quiver(self.n, counts, self.labels)

    def orientation_key(self) -> tuple:
        return tuple(sorted(self.arrows.items()))

    def to_json(self) -> dict:
        return {"n": self.n, "arrows": [[s, t] for s, t in self.arrow_list()]}

    def to_text(self) -> str:
        lines = [f"vertices {self.n}"]
        lines += [f"arrow {s} {t}" for s, t in self.arrow_list()]
        return "\n".join(lines) + "\n"


def _validate(q: Quiver) -> None:
    if q.n < 1:
        raise ValidationError("empty", "a quiver needs at least one vertex")
    for (s, t), m in q.arrows.items():
        if not (1 <= s <= q.n and 1 <= t <= q.n):
            raise ValidationError("range", f"arrow {s}->{t} outside 1..{q.n}")
        if s == t:
            raise ValidationError("loop", f"loop at vertex {s}")
        if m < 0:
            raise ValidationError("range", f"negative multiplicity on {s}->{t}")
    indeg = {v: 0 for v in range(1, q.n + 1)}
    for (s, t) in q.arrows:
        indeg[t] += 1
    ready = deque(v for v, d in indeg.items() if d == 0)
    seen = 0
    while ready:
        v = ready.popleft()
        seen += 1
        for (s, t) in q.arrows:
            if s == v:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
    if seen != q.n:
        raise ValidationError("cyclic", "quiver has a directed cycle")
    reached = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in q.neighbours(v):
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != q.n:
        raise ValidationError("disconnected", "underlying graph is not connected")


def parse_quiver(text: str) -> Quiver:
    """Parse the line format (``vertices n`` / ``arrow i j``) or its JSON mirror."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            n = int(data["n"])
            arrows = [(int(a), int(b)) for a, b in data.get("arrows", [])]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad quiver JSON: {exc}") from exc
        return Quiver.from_arrows(n, arrows)
    n = None
    arrows = []
    # ';' is accepted as a line separator so one-liners work on the command line
    for lineno, raw in enumerate(stripped.replace(";", "\n").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "vertices" and len(parts) == 2:
                if n is not None:
                    raise ParseError(f"line {lineno}: duplicate 'vertices'")
                n = int(parts[1])
            elif parts[0] == "arrow" and len(parts) == 3:
                if n is None:
                    raise ParseError(f"line {lineno}: 'arrow' before 'vertices'")
                arrows.append((int(parts[1]), int(parts[2])))
            else:
                raise ParseError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise ParseError("missing 'vertices' line")
    return Quiver.from_arrows(n, arrows)


@dataclass(frozen=True)
class FormPair:
    """Euler matrix E (E_ij = δ_ij - #arrows i->j) and Cartan matrix A = E + Eᵀ."""

    euler: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    quiver: Quiver | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.euler)

    def chi(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Euler form <a, b> = aᵀ E b."""
        return sum(a[i] * self.euler[i][j] * b[j]
                   for i in range(self.n) if a[i] for j in range(self.n) if b[j])

    def sym(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Symmetrised form I(a, b) = aᵀ A b."""
        return sum(a[i] * self.cartan[i][j] * b[j]
                   for i in range(self.n) if a[i] for j in range(self.n) if b[j])

    def tits(self, a: Sequence[int]) -> int:
        return self.sym(a, a)


def forms(q: Quiver) -> FormPair:
    n = q.n
    euler = tuple(tuple(int(i == j) - q.q(i + 1, j + 1) for j in range(n)) for i in range(n))
    cartan = tuple(tuple(euler[i][j] + euler[j][i] for j in range(n)) for i in range(n))
    return FormPair(euler, cartan, q)


class Kind(Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class QuiverType:
    kind: Kind
    delta: Vector | None = None

    def __str__(self):
        if self.kind is Kind.AFFINE:
            return f"affine(delta={list(self.delta)})"
        return self.kind.value


def classify_type(f: FormPair) -> QuiverType:
    """Decide definiteness of the Cartan matrix by exact pivoted LDLᵀ."""
    res = ldlt(f.cartan)
    if any(d < 0 for d in res.diag):
        return QuiverType(Kind.INDEFINITE)
    if not res.residual:
        return QuiverType(Kind.FINITE)
    if any(x != 0 for row in res.residual for x in row):
        # remaining diagonal <= 0 with something nonzero left: not semidefinite
        return QuiverType(Kind.INDEFINITE)
    kernel = nullspace([list(map(Fraction, row)) for row in f.cartan])
    if len(kernel) != 1:
        raise InternalError(f"kernel of the Cartan matrix has dimension {len(kernel)}")
    delta = primitive(kernel[0])
    if delta[0] < 0 or any(x < 0 for x in delta):
        delta = tuple(-x for x in delta)
    if any(x <= 0 for x in delta):
        raise InternalError(f"affine kernel generator {delta} is not positive")
    return QuiverType(Kind.AFFINE, delta)

"""Reflection functors on representations, simple tilts of hearts, and gldim estimates."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NotARootResult, NotSinkOrSource, ValidationError
from .gaussian import GQ, PhaseKey
from .linalg import det, matmul, nullspace, rank, transpose
from .quiver import FormPair, Quiver
from .roots import RootData, Vector, is_positive, real_roots_up_to, shift_sign, simple_root
from .stability import CentralCharge, GenericHomTable, destabilising_witness, semistable_classes_up_to

Matrix = list[list[Fraction]]


@dataclass
class Representation:
    """Dimension vector plus one matrix per arrow of ``quiver.arrow_list()``.

    The matrix for an arrow s -> t has shape dims[t] x dims[s].
    """

    quiver: Quiver
    dims: tuple[int, ...]
    maps: list[Matrix]

    def __post_init__(self):
        self.dims = tuple(self.dims)
        self.maps = [[[Fraction(x) for x in row] for row in m] for m in self.maps]
        arrows = self.quiver.arrow_list()
        if len(self.dims) != self.quiver.n or len(self.maps) != len(arrows):
            raise ValidationError("shape", "one dimension per vertex and one matrix per arrow")
        for (s, t), m in zip(arrows, self.maps):
            rows, cols = self.dims[t - 1], self.dims[s - 1]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValidationError("shape", f"map {s}->{t} must be {rows}x{cols}")

    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return not any(self.dims)

    def to_json(self) -> dict:
        from .gaussian import format_fraction
        return {"quiver": self.quiver.to_json(), "dims": list(self.dims),
                "maps": [[[format_fraction(x) for x in row] for row in m] for m in self.maps]}

    @classmethod
    def from_json(cls, q: Quiver, data: dict) -> "Representation":
        maps = [[[Fraction(x) for x in row] for row in m] for m in data["maps"]]
        return cls(q, tuple(data["dims"]), maps)


def simple_rep(q: Quiver, i: int) -> Representation:
    dims = simple_root(q.n, i)
    return Representation(q, dims, [_zero(dims[t - 1], dims[s - 1]) for s, t in q.arrow_list()])


def _zero(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def _new_arrow_order(q: Quiver, i: int) -> tuple[Quiver, list[int]]:
    """Reflected quiver and, for each of its arrows, the index of the old arrow it came from."""
    new = q.reflect_at(i)
    old = q.arrow_list()
    flipped = [(t, s) if i in (s, t) else (s, t) for s, t in old]
    used = [False] * len(old)
    order = []
    for a in new.arrow_list():
        k = next(k for k, b in enumerate(flipped) if b == a and not used[k])
        used[k] = True
        order.append(k)
    return new, order


def bgp_reflect(q: Quiver, i: int, m: Representation) -> tuple[Quiver, Representation]:
    """Reflection functor at a sink (kernel construction) or a source (cokernel construction)."""
    arrows = q.arrow_list()
    if q.is_sink(i):
        inc = [k for k, (s, t) in enumerate(arrows) if t == i]
        blocks = [m.dims[arrows[k][0] - 1] for k in inc]
        total = sum(blocks)
        big = [[x for k in inc for x in m.maps[k][r]] for r in range(m.dims[i - 1])]
        kern = nullspace(big, total) if total else []
        dim_i = len(kern)
        new_maps_by_old: dict[int, Matrix] = {}
        off = 0
        for k, b in zip(inc, blocks):
            # reversed arrow i -> s(a): project the kernel onto block a
            new_maps_by_old[k] = [[kern[c][off + r] for c in range(dim_i)] for r in range(b)]
            off += b
    elif q.is_source(i):
        out = [k for k, (s, t) in enumerate(arrows) if s == i]
        blocks = [m.dims[arrows[k][1] - 1] for k in out]
        total = sum(blocks)
        psi = [row for k in out for row in m.maps[k]]
        # left nullspace of psi: rows n with n psi = 0
        coker = nullspace(transpose(psi), total) if psi and m.dims[i - 1] else \
            [[Fraction(int(a == b)) for a in range(total)] for b in range(total)]
        dim_i = len(coker)
        new_maps_by_old = {}
        off = 0
        for k, b in zip(out, blocks):
            new_maps_by_old[k] = [[coker[r][off + c] for c in range(b)] for r in range(dim_i)]
            off += b
    else:
        raise NotSinkOrSource(f"vertex {i} is neither a sink nor a source")
    new_q, order = _new_arrow_order(q, i)
    dims = list(m.dims)
    dims[i - 1] = dim_i
    maps = [new_maps_by_old.get(k, m.maps[k]) for k in order]
    return new_q, Representation(new_q, tuple(dims), maps)


def path_rank_invariants(m: Representation, max_len: int | None = None) -> tuple:
    """Ranks of the composite maps along every arrow path of length <= max_len (default n)."""
    q = m.quiver
    arrows = q.arrow_list()
    max_len = q.n if max_len is None else max_len
    out = []
    frontier = [((k,), m.maps[k]) for k in range(len(arrows))]
    for _ in range(max_len):
        nxt = []
        for path, mat in frontier:
            s, t = arrows[path[0]][0], arrows[path[-1]][1]
            r = rank(mat) if mat and mat[0] else 0
            out.append((path, r))
            for k, (s2, t2) in enumerate(arrows):
                if s2 == t:
                    nxt.append((path + (k,), matmul(m.maps[k], mat) if mat else []))
        frontier = nxt
    return (m.dims, tuple(sorted(out)))


@dataclass
class OrientationGraph:
    nodes: dict[tuple, Quiver]
    edges: list[tuple[tuple, int, tuple]]

    def __len__(self):
        return len(self.nodes)


def orientation_graph(q: Quiver, depth: int) -> OrientationGraph:
    """BFS over orientations reachable by reflecting at sinks and sources."""
    start = q.orientation_key()
    nodes = {start: q}
    edges = []
    queue = deque([(q, 0)])
    while queue:
        cur, d = queue.popleft()
        if d >= depth:
            continue
        for i in range(1, cur.n + 1):
            if not (cur.is_sink(i) or cur.is_source(i)):
                continue
            nq = cur.reflect_at(i)
            key = nq.orientation_key()
            edges.append((cur.orientation_key(), i, key))
            if key not in nodes:
                nodes[key] = nq
                queue.append((nq, d + 1))
    return OrientationGraph(nodes, edges)


@dataclass(frozen=True)
class HeartSMC:
    """Simple-minded collection: simples X_i = γ_i[k_i] with γ_i a positive root."""

    simples: tuple[tuple[Vector, int], ...]
    word: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    @classmethod
    def standard(cls, n: int) -> "HeartSMC":
        return cls(tuple((simple_root(n, i), 0) for i in range(1, n + 1)))

    def signed(self) -> list[Vector]:
        return [tuple(x * shift_sign(k) for x in g) for g, k in self.simples]

    def det(self) -> int:
        return int(det(self.signed()))

    def key(self) -> frozenset:
        return frozenset(self.simples)

    def to_json(self) -> dict:
        return {"simples": [{"root": list(g), "shift": k} for g, k in self.simples],
                "word": [f"{d}{i}" for i, d in self.word]}


def _graded_hom(table: GenericHomTable, a: Vector, b: Vector, q: int) -> int:
    """dim Hom^q(a, b) between general modules of classes a, b (hereditary: q in {0, 1})."""
    if q == 0:
        return table.hom(a, b)
    if q == 1:
        return table.ext(a, b)
    return 0


def _as_shifted(c: Vector, base_shift: int, down: int, real: set, word) -> tuple[Vector, int]:
    if c not in real:
        raise NotARootResult(f"tilt produced {list(c)}, not a real root (word {word})")
    s = shift_sign(base_shift)
    pos = tuple(s * x for x in c)
    if is_positive(pos):
        return pos, base_shift
    return tuple(-x for x in pos), base_shift + down


def tilt_heart(h: HeartSMC, i: int, direction: str, f: FormPair,
               table: GenericHomTable | None = None, bound: int | None = None,
               real: set | None = None) -> HeartSMC:
    """Left (``"L"``) or right (``"R"``) simple tilt at the i-th simple (1-based)."""
    table = table or GenericHomTable(f)
    if real is None:
        bound = bound or max(2 * sum(sum(g) for g, _ in h.simples), 4)
        real = real_roots_up_to(f, bound)
    direction = direction.upper()[0]
    gi, ki = h.simples[i - 1]
    ci = tuple(x * shift_sign(ki) for x in gi)
    word = h.word + ((i, direction),)
    out = []
    for j, (gj, kj) in enumerate(h.simples, 1):
        if j == i:
            out.append((gi, ki + 1 if direction == "L" else ki - 1))
            continue
        cj = tuple(x * shift_sign(kj) for x in gj)
        if direction == "L":
            mult = _graded_hom(table, gj, gi, 1 + ki - kj)
            down = -1
        else:
            mult = _graded_hom(table, gi, gj, 1 + kj - ki)
            down = 1
        c = tuple(a + mult * b for a, b in zip(cj, ci))
        out.append(_as_shifted(c, kj, down, real, word))
    return HeartSMC(tuple(out), word)


@dataclass(frozen=True)
class GldimEstimate:
    value: PhaseKey | None
    pair: tuple[Vector, Vector] | None
    degree: int | None

    def le_one(self) -> bool:
        return self.value is None or self.value <= ONE

    @property
    def display(self) -> float | None:
        return None if self.value is None else self.value.value

    def to_json(self) -> dict:
        return {"value": None if self.value is None else self.value.to_json(),
                "pair": None if self.pair is None else [list(p) for p in self.pair],
                "degree": self.degree}


ONE = PhaseKey(GQ(-1, 0), 0)


def gldim_estimate(Z: CentralCharge, f: FormPair, q: Quiver, h: int,
                   table: GenericHomTable | None = None, ss=None) -> GldimEstimate:
    """Max of φ(β) − φ(α) + p over semistable roots with generic Hom^p(α, β) ≠ 0."""
    table = table or GenericHomTable(f, cap=max(12, h))
    if ss is None:
        ss = semistable_classes_up_to(Z, table, RootData(f, q, h))
    best = None
    for (a, pa), (b, pb) in itertools.product(ss, repeat=2):
        diff = pb - pa
        for p in (0, 1):
            if _graded_hom(table, a, b, p):
                cand = diff.shift(p)
                if best is None or cand > best[0]:
                    best = (cand, (a, b), p)
    if best is None:
        return GldimEstimate(None, None, None)
    return GldimEstimate(*best)


@dataclass(frozen=True)
class TotalSemistability:
    value: bool
    failing: tuple[tuple[Vector, Vector], ...]

    def __bool__(self):
        return self.value

    def to_json(self) -> dict:
        return {"totally_semistable": self.value,
                "failing": [{"root": list(r), "destabiliser": list(b)} for r, b in self.failing]}


def is_totally_semistable(Z: CentralCharge, f: FormPair, q: Quiver, h: int,
                          table: GenericHomTable | None = None,
                          roots: RootData | None = None) -> TotalSemistability:
    table = table or GenericHomTable(f, cap=max(12, h))
    roots = roots or RootData(f, q, h)
    failing = []
    for r in roots.positive_roots():
        w = destabilising_witness(Z, table, r)
        if w is not None:
            failing.append((r, w))
    return TotalSemistability(not failing, tuple(failing))


def heart_from_certificate(cert) -> HeartSMC:
    """Read a window certificate as a simple-minded collection."""
    return HeartSMC(tuple((s.root, s.shift) for s in cert.simples))

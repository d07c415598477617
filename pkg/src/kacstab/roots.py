"""Real and imaginary roots of the root lattice of a quiver, up to a height bound."""

from __future__ import annotations

from collections import deque
from enum import Enum
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .quiver import FormPair, Kind, Quiver, classify_type

Vector = tuple[int, ...]

DEFAULT_BUDGET = 10**6
DEFAULT_SLACK = 3


class RootKind(Enum):
    REAL_POSITIVE = "real+"
    REAL_NEGATIVE = "real-"
    IMAGINARY_POSITIVE = "imaginary+"
    IMAGINARY_NEGATIVE = "imaginary-"
    NOT_A_ROOT = "not-a-root"
    ZERO = "zero"

    def negate(self) -> "RootKind":
        return _FLIP.get(self, self)


_FLIP = {
    RootKind.REAL_POSITIVE: RootKind.REAL_NEGATIVE,
    RootKind.REAL_NEGATIVE: RootKind.REAL_POSITIVE,
    RootKind.IMAGINARY_POSITIVE: RootKind.IMAGINARY_NEGATIVE,
    RootKind.IMAGINARY_NEGATIVE: RootKind.IMAGINARY_POSITIVE,
}


def height(v: Sequence[int]) -> int:
    return sum(abs(x) for x in v)


def simple_root(n: int, i: int) -> Vector:
    return tuple(int(j == i - 1) for j in range(n))


def shift_sign(k: int) -> int:
    """(-1)^k as an int, also for negative k."""
    return -1 if k % 2 else 1


def negate(v: Sequence[int]) -> Vector:
    return tuple(-x for x in v)


def is_positive(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) and any(v)


def reflect(f: FormPair, i: int, lam: Sequence[int]) -> Vector:
    """r_i(λ) = λ - I(λ, α_i) α_i."""
    if not 1 <= i <= f.n:
        raise IndexError(f"vertex {i} outside 1..{f.n}")
    c = sum(lam[j] * f.cartan[j][i - 1] for j in range(f.n))
    out = list(lam)
    out[i - 1] -= c
    return tuple(out)


def _closure(f: FormPair, seeds: Iterable[Vector], limit: int, budget: int) -> set[Vector]:
    """Orbit of ``seeds`` under r_1..r_n, never leaving height <= limit."""
    seen: set[Vector] = set()
    queue: deque[Vector] = deque()
    for s in seeds:
        if height(s) <= limit and s not in seen:
            seen.add(s)
            queue.append(s)
    while queue:
        v = queue.popleft()
        for i in range(1, f.n + 1):
            w = reflect(f, i, v)
            if w in seen or height(w) > limit:
                continue
            seen.add(w)
            if len(seen) > budget:
                raise BudgetExceeded(f"root closure exceeded {budget} vectors")
            queue.append(w)
    return seen


def real_roots_up_to(f: FormPair, h: int, *, slack: int = DEFAULT_SLACK,
                     budget: int = DEFAULT_BUDGET) -> set[Vector]:
    """All real roots of height <= h.

    The reflection closure of {±α_i} is explored up to height ``slack * h`` so
    that paths leaving the window transiently are not lost.
    """
    if h < 1:
        raise ValueError("height bound must be >= 1")
    seeds = []
    for i in range(1, f.n + 1):
        a = simple_root(f.n, i)
        seeds += [a, negate(a)]
    orbit = _closure(f, seeds, max(h, slack * h), budget)
    return {v for v in orbit if height(v) <= h}


def support_connected(q: Quiver, lam: Sequence[int]) -> bool:
    supp = {i + 1 for i, x in enumerate(lam) if x}
    if not supp:
        return False
    start = next(iter(supp))
    reached = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in q.neighbours(v):
            if w in supp and w not in reached:
                reached.add(w)
                stack.append(w)
    return reached == supp


def _positive_vectors(n: int, h: int):
    """Nonzero vectors in L⁺ of height <= h."""

    def rec(k, left, cur):
        if k == n:
            if any(cur):
                yield tuple(cur)
            return
        for x in range(left + 1):
            cur.append(x)
            yield from rec(k + 1, left - x, cur)
            cur.pop()

    yield from rec(0, h, [])


def fundamental_set_K(f: FormPair, q: Quiver, h: int) -> set[Vector]:
    """λ ∈ L⁺∖0 with height <= h, connected support and I(λ, α_i) <= 0 for all i."""
    out = set()
    for lam in _positive_vectors(f.n, h):
        if all(sum(lam[j] * f.cartan[j][i] for j in range(f.n)) <= 0 for i in range(f.n)) \
                and support_connected(q, lam):
            out.add(lam)
    return out


def imaginary_roots_up_to(f: FormPair, q: Quiver, h: int, *, slack: int = DEFAULT_SLACK,
                          budget: int = DEFAULT_BUDGET) -> set[Vector]:
    if h < 1:
        raise ValueError("height bound must be >= 1")
    qt = classify_type(f)
    if qt.kind is Kind.FINITE:
        return set()
    if qt.kind is Kind.AFFINE:
        d = qt.delta
        hd = height(d)
        out = set()
        for k in range(1, h // hd + 1):
            v = tuple(k * x for x in d)
            out |= {v, negate(v)}
        return out
    seeds = fundamental_set_K(f, q, h)
    pos = _closure(f, seeds, max(h, slack * h), budget)
    pos = {v for v in pos if height(v) <= h}
    return pos | {negate(v) for v in pos}


class RootData:
    """Cached root enumerations for one quiver at one height bound."""

    def __init__(self, f: FormPair, q: Quiver, h: int, *, slack: int = DEFAULT_SLACK,
                 budget: int = DEFAULT_BUDGET):
        self.f, self.q, self.h = f, q, h
        self.real = real_roots_up_to(f, h, slack=slack, budget=budget)
        self.imaginary = imaginary_roots_up_to(f, q, h, slack=slack, budget=budget)

    def positive_roots(self) -> list[Vector]:
        return sorted(v for v in self.real | self.imaginary if is_positive(v))

    def kind(self, lam: Sequence[int]) -> RootKind:
        return _kind_from_sets(tuple(lam), self.real, self.imaginary)


def _kind_from_sets(lam: Vector, real: set, imag: set) -> RootKind:
    if not any(lam):
        return RootKind.ZERO
    if any(x > 0 for x in lam) and any(x < 0 for x in lam):
        return RootKind.NOT_A_ROOT
    pos = all(x >= 0 for x in lam)
    if lam in real:
        return RootKind.REAL_POSITIVE if pos else RootKind.REAL_NEGATIVE
    if lam in imag:
        return RootKind.IMAGINARY_POSITIVE if pos else RootKind.IMAGINARY_NEGATIVE
    return RootKind.NOT_A_ROOT


def root_kind(f: FormPair, q: Quiver, lam: Sequence[int], h: int | None = None) -> RootKind:
    lam = tuple(lam)
    if h is None:
        h = max(1, height(lam))
    if height(lam) > h:
        raise ValueError(f"height of {lam} exceeds the bound {h}")
    if not any(lam):
        return RootKind.ZERO
    if any(x > 0 for x in lam) and any(x < 0 for x in lam):
        return RootKind.NOT_A_ROOT
    return _kind_from_sets(lam, real_roots_up_to(f, h), imaginary_roots_up_to(f, q, h))


def sorted_roots(vectors: Iterable[Sequence[int]]) -> list[list[int]]:
    """Lexicographic order used for every serialised root set."""
    return [list(v) for v in sorted(tuple(v) for v in vectors)]

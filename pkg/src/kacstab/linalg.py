"""Exact linear algebra over the rationals.

Matrices are lists of rows; entries are ints or ``Fraction``.  Everything here
is small-dimensional (rank of a root lattice, dimension of a representation
space at desk scale), so plain Gaussian elimination is fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(m: Sequence[Sequence[int | Fraction]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0))
             for j in range(cols)] for i in range(len(a))]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def det(m: Sequence[Sequence[int | Fraction]]) -> Fraction:
    a = to_fractions(m)
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        p = a[c][c]
        result *= p
        for r in range(c + 1, n):
            f = a[r][c] / p
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return result


def rref(m: Sequence[Sequence[int | Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = to_fractions(m)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence[int | Fraction]]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence[int | Fraction]], cols: int | None = None) -> Matrix:
    """Basis of {x : m x = 0}, returned as a list of column vectors."""
    if cols is None:
        cols = len(m[0]) if m else 0
    if not m:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(m: Sequence[Sequence[int | Fraction]], b: Sequence[int | Fraction]) -> list[Fraction] | None:
    """Solve a square nonsingular system exactly; ``None`` if singular."""
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(b[i])] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def primitive(v: Sequence[int | Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class LDLResult:
    """P A Pᵀ = L D Lᵀ restricted to the eliminated block.

    ``perm`` lists the pivot order, ``diag`` the pivots actually taken and
    ``residual`` the trailing Schur complement that could not be pivoted.
    """

    perm: tuple[int, ...]
    lower: tuple[tuple[Fraction, ...], ...]
    diag: tuple[Fraction, ...]
    residual: tuple[tuple[Fraction, ...], ...]

    @property
    def inertia(self) -> tuple[int, int, int]:
        """(positive, negative, zero) counts; only valid if ``residual`` is zero."""
        pos = sum(1 for d in self.diag if d > 0)
        neg = sum(1 for d in self.diag if d < 0)
        return pos, neg, len(self.residual)


def ldlt(a: Sequence[Sequence[int | Fraction]]) -> LDLResult:
    """Symmetric-pivoted LDLᵀ of a symmetric matrix.

    At each step the largest remaining diagonal entry is used as pivot.  The
    elimination stops when every remaining diagonal entry is <= 0; whatever is
    left is returned as ``residual`` so callers can decide definiteness.
    """
    n = len(a)
    s = to_fractions(a)
    remaining = list(range(n))
    perm: list[int] = []
    diag: list[Fraction] = []
    cols: dict[int, dict[int, Fraction]] = {}
    while remaining:
        best = max(remaining, key=lambda i: (s[i][i], -i))
        if s[best][best] <= 0:
            break
        p = s[best][best]
        remaining.remove(best)
        col = {i: s[i][best] / p for i in remaining}
        for i in remaining:
            for j in remaining:
                s[i][j] -= col[i] * p * col[j]
        perm.append(best)
        diag.append(p)
        cols[best] = col
    order = perm + remaining
    lower = []
    for r, i in enumerate(order):
        row = []
        for c, j in enumerate(order):
            if c == r:
                row.append(Fraction(1))
            elif c < r and c < len(perm):
                row.append(cols[j].get(i, Fraction(0)))
            else:
                row.append(Fraction(0))
        lower.append(tuple(row))
    residual = tuple(tuple(s[i][j] for j in remaining) for i in remaining)
    return LDLResult(tuple(order), tuple(lower), tuple(diag), residual)


def unimodular(m: Sequence[Sequence[int]]) -> bool:
    return abs(det(m)) == 1

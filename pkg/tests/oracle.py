"""Brute-force oracles, independent of the library's recursions.

Representations are random matrices over F_p; subrepresentations are found by
exhaustive subspace search, which is only feasible for dimension entries <= 2
or so.  Root membership uses Kac's descent to the fundamental set, and the
finite/affine split uses sympy principal minors.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import sympy

P = 101


# -- linear algebra mod p -------------------------------------------------

def rank_mod(rows, p=P):
    m = [[x % p for x in r] for r in rows if r]
    if not m:
        return 0
    cols = len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def apply(mat, v, p=P):
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in mat)


@lru_cache(maxsize=None)
def subspaces(d, k, p=P):
    """All k-dimensional subspaces of F_p^d, as tuples of basis rows in RREF."""
    out = []
    for pivots in itertools.combinations(range(d), k):
        free = [(r, c) for r in range(k) for c in range(d) if c > pivots[r] and c not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            out.append(tuple(tuple(r) for r in rows))
    return out


def contains(basis, vectors, p=P):
    return rank_mod(list(basis) + list(vectors), p) == len(basis)


# -- representations ----------------------------------------------------------

class Rep:
    """dims plus maps keyed by arrow index; maps[a] is dims[t] x dims[s] over F_p."""

    def __init__(self, n, arrows, dims, maps, p=P):
        self.n, self.arrows, self.dims, self.maps, self.p = n, arrows, tuple(dims), maps, p


def random_rep(n, arrows, dims, rng, p=P):
    maps = [[[rng.randrange(p) for _ in range(dims[s - 1])] for _ in range(dims[t - 1])]
            for s, t in arrows]
    return Rep(n, arrows, dims, maps, p)


def topo_order(n, arrows):
    indeg = {v: 0 for v in range(1, n + 1)}
    for s, t in arrows:
        indeg[t] += 1
    order = []
    ready = sorted(v for v in indeg if indeg[v] == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        for s, t in arrows:
            if s == v:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
                    ready.sort()
    return order


def subreps(m: Rep):
    """Every subrepresentation U of m, as (dim vector, per-vertex bases)."""
    order = topo_order(m.n, m.arrows)
    found = []

    def rec(k, chosen):
        if k == len(order):
            dims = tuple(len(chosen[v]) for v in range(1, m.n + 1))
            found.append((dims, dict(chosen)))
            return
        v = order[k]
        need = []
        for a, (s, t) in enumerate(m.arrows):
            if t == v:
                need += [apply(m.maps[a], u, m.p) for u in chosen[s]]
        d = m.dims[v - 1]
        for kk in range(d + 1):
            for basis in subspaces(d, kk, m.p):
                if contains(basis, need, m.p) if kk else not any(any(x) for x in need):
                    chosen[v] = basis
                    rec(k + 1, chosen)
        chosen.pop(v, None)

    rec(0, {})
    return found


def sub_dims(m: Rep) -> set:
    return {d for d, _ in subreps(m)}


def generic_sub_dims(n, arrows, dims, seed=0, samples=8, min_hits=2, p=P) -> set:
    """Sub dimension vectors of a general representation, by sampling.

    Over F_p a general representation may lack a sub that exists over the
    algebraic closure (a pencil whose characteristic polynomial does not split),
    so plain intersection undercounts.  Sub dimensions that exist on a dense
    open set show up in a positive share of samples, while special ones show up
    with probability O(1/p); ``min_hits`` separates the two.
    """
    rng = random.Random(seed)
    hits: dict = {}
    for _ in range(samples):
        for d in sub_dims(random_rep(n, arrows, dims, rng, p)):
            hits[d] = hits.get(d, 0) + 1
    return {d for d, k in hits.items() if k >= min_hits}


def quotient(m: Rep, basis: dict) -> Rep:
    """m / U with coordinates on a complement of each U_v."""
    p = m.p
    comp, inv = {}, {}
    for v in range(1, m.n + 1):
        d = m.dims[v - 1]
        u = [list(r) for r in basis[v]]
        extra = []
        for e in range(d):
            cand = [int(i == e) for i in range(d)]
            if rank_mod(u + extra + [cand], p) > len(u) + len(extra):
                extra.append(cand)
        comp[v] = extra
        inv[v] = _inverse_cols(u + extra, p) if d else []
    maps = []
    for a, (s, t) in enumerate(m.arrows):
        ku = len(basis[t])
        cols = []
        for c in comp[s]:
            img = apply(m.maps[a], c, p)
            coords = apply(inv[t], img, p) if m.dims[t - 1] else ()
            cols.append(coords[ku:])
        rows = len(comp[t])
        maps.append([[cols[j][i] for j in range(len(cols))] for i in range(rows)])
    dims = tuple(len(comp[v]) for v in range(1, m.n + 1))
    return Rep(m.n, m.arrows, dims, maps, p)


def _inverse_cols(vectors, p):
    """Inverse of the matrix whose columns are ``vectors``."""
    d = len(vectors)
    a = [[vectors[j][i] % p for j in range(d)] + [int(i == k) for k in range(d)] for i in range(d)]
    for c in range(d):
        piv = next(i for i in range(c, d) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        iv = pow(a[c][c], p - 2, p)
        a[c] = [x * iv % p for x in a[c]]
        for i in range(d):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return [row[d:] for row in a]


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def charge(Z, v):
    return (sum(c * z[0] for c, z in zip(v, Z)), sum(c * z[1] for c, z in zip(v, Z)))


def semistable_oracle(Z, gsubs: set, alpha) -> bool:
    za = charge(Z, alpha)
    return all(cross(za, charge(Z, b)) <= 0 for b in gsubs if any(b) and b != tuple(alpha))


def hn_oracle(Z, m: Rep):
    """HN classes of an explicit representation, peeling maximal destabilising subs."""
    out = []
    while any(m.dims):
        subs = [(d, b) for d, b in subreps(m) if any(d)]
        total = m.dims

        def better(x, y):
            # x strictly better than y: larger phase, then larger height
            c = cross(charge(Z, y), charge(Z, x))
            return c > 0 or (c == 0 and sum(x) > sum(y))

        best = subs[0]
        for d, b in subs[1:]:
            if better(d, best[0]):
                best = (d, b)
        out.append(best[0])
        if best[0] == total:
            break
        m = quotient(m, best[1])
    return out


# -- roots and types ----------------------------------------------------------

def cartan_from(n, arrows):
    a = [[2 * int(i == j) for j in range(n)] for i in range(n)]
    for s, t in arrows:
        a[s - 1][t - 1] -= 1
        a[t - 1][s - 1] -= 1
    return a


def _sym(a, x, y):
    n = len(a)
    return sum(x[i] * a[i][j] * y[j] for i in range(n) for j in range(n))


def connected_support(n, arrows, lam):
    supp = {i + 1 for i in range(n) if lam[i]}
    if not supp:
        return False
    seen = {min(supp)}
    stack = [min(supp)]
    while stack:
        v = stack.pop()
        for s, t in arrows:
            for a, b in ((s, t), (t, s)):
                if a == v and b in supp and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return seen == supp


def kac_kind(n, arrows, lam) -> str:
    """'real', 'imaginary' or 'none' for a positive vector, by descent to K or a simple root."""
    a = cartan_from(n, arrows)
    lam = list(lam)
    while True:
        if any(x < 0 for x in lam):
            return "none"
        if sum(lam) == 1:
            return "real"
        if not connected_support(n, arrows, lam):
            return "none"
        pair = [_sym(a, lam, [int(j == i) for j in range(n)]) for i in range(n)]
        i = next((i for i in range(n) if pair[i] > 0), None)
        if i is None:
            return "imaginary"
        lam[i] -= pair[i]


def roots_oracle(n, arrows, h):
    real, imag = set(), set()
    for lam in itertools.product(range(h + 1), repeat=n):
        if 0 < sum(lam) <= h:
            k = kac_kind(n, arrows, lam)
            neg = tuple(-x for x in lam)
            if k == "real":
                real |= {lam, neg}
            elif k == "imaginary":
                imag |= {lam, neg}
    return real, imag


def type_oracle(n, arrows) -> str:
    m = sympy.Matrix(cartan_from(n, arrows))
    minors = [m.extract(list(s), list(s)).det()
              for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    if all(x > 0 for x in minors):
        return "finite"
    if all(x >= 0 for x in minors) and m.rank() == n - 1:
        return "affine"
    return "indefinite"


class HNOracle:
    """HN types of one explicit representation for many charges.

    The subrepresentation lattice is enumerated once; the quotient by each
    maximal destabilising sub is built (and cached) on first use.  The HN
    filtration is Galois-stable, so over F_p it already equals the one over the
    algebraic closure.
    """

    def __init__(self, m: Rep):
        self.m = m
        self.by_dims: dict = {}
        for d, b in subreps(m):
            if any(d):
                self.by_dims.setdefault(d, []).append(b)
        self._quot: dict = {}

    def hn(self, Z) -> list:
        total = self.m.dims
        if not any(total):
            return []
        best = None
        for d in self.by_dims:
            if best is None:
                best = d
                continue
            c = cross(charge(Z, best), charge(Z, d))
            if c > 0 or (c == 0 and sum(d) > sum(best)):
                best = d
        if best == total:
            return [best]
        # the maximal destabilising sub is unique, so its dimension vector pins it down
        (basis,) = self.by_dims[best]
        q = self._quot.get(best)
        if q is None:
            q = self._quot[best] = HNOracle(quotient(self.m, basis))
        return [best] + q.hn(Z)

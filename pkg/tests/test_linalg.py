from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from kacstab.linalg import det, ldlt, nullspace, primitive, rank, rref, solve, unimodular

small = st.integers(-4, 4)
square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                      min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(square)
def test_det_matches_sympy(m):
    assert det(m) == sympy.Matrix(m).det()


@settings(max_examples=80, deadline=None)
@given(square)
def test_rank_and_nullspace_are_complementary(m):
    n = len(m[0])
    ker = nullspace(m)
    assert rank(m) + len(ker) == n
    assert rank(m) == sympy.Matrix(m).rank()
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@settings(max_examples=60, deadline=None)
@given(square, st.lists(small, min_size=4, max_size=4))
def test_solve_inverts_when_nonsingular(m, b):
    b = b[:len(m)]
    x = solve(m, b)
    if det(m) == 0:
        return
    assert [sum(Fraction(a) * y for a, y in zip(row, x)) for row in m] == b


def test_rref_pivots():
    red, piv = rref([[1, 2, 3], [2, 4, 7]])
    assert piv == [0, 2]
    assert red[0][1] == 2


def test_primitive_and_unimodular():
    assert primitive([Fraction(2, 3), Fraction(4, 3)]) == (1, 2)
    assert primitive([0, -6, 9]) == (0, -2, 3)
    assert unimodular([[0, 1], [-1, 0]])
    assert not unimodular([[1, 1], [1, -1]])


def test_ldlt_reconstructs_definite_block():
    a = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    res = ldlt(a)
    assert not res.residual
    assert all(d > 0 for d in res.diag)
    assert res.inertia == (3, 0, 0)


def test_ldlt_stops_at_nonpositive_residual():
    res = ldlt([[2, -2], [-2, 2]])
    assert len(res.diag) == 1
    assert all(x == 0 for row in res.residual for x in row)

import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import QUIVERS, quiver
from kacstab.errors import BudgetExceeded
from kacstab.quiver import Quiver, forms
from kacstab.roots import (RootData, RootKind, fundamental_set_K, imaginary_roots_up_to,
                           real_roots_up_to, reflect, root_kind, simple_root)


def pm(*vs):
    return {tuple(v) for v in vs} | {tuple(-x for x in v) for v in vs}


def test_reflect_examples():
    f = forms(quiver("A2"))
    assert reflect(f, 1, (0, 1)) == (1, 1)
    assert reflect(forms(quiver("K2")), 1, (1, 1)) == (1, 1)
    for name in ("A3", "K3", "D4"):
        g = forms(quiver(name))
        for i in range(1, g.n + 1):
            a = simple_root(g.n, i)
            assert reflect(g, i, a) == tuple(-x for x in a)
    with pytest.raises(IndexError):
        reflect(f, 3, (1, 0))


@pytest.mark.parametrize("name", ["A3", "K2", "K3", "tA2"])
def test_reflection_is_an_isometric_involution(name):
    f = forms(quiver(name))
    vecs = list(itertools.product(range(-2, 3), repeat=f.n))[:60]
    for i in range(1, f.n + 1):
        for lam in vecs:
            assert reflect(f, i, reflect(f, i, lam)) == lam
            for nu in vecs[:10]:
                assert f.sym(reflect(f, i, lam), reflect(f, i, nu)) == f.sym(lam, nu)


def test_real_root_examples():
    assert real_roots_up_to(forms(quiver("A2")), 5) == pm((1, 0), (0, 1), (1, 1))
    assert real_roots_up_to(forms(quiver("K2")), 4) == pm((1, 0), (0, 1), (2, 1), (1, 2))
    for name in QUIVERS:
        f = forms(quiver(name))
        assert real_roots_up_to(f, 1) == pm(*(simple_root(f.n, i) for i in range(1, f.n + 1)))


def test_fundamental_set_examples():
    assert fundamental_set_K(forms(quiver("A2")), quiver("A2"), 8) == set()
    assert fundamental_set_K(forms(quiver("K2")), quiver("K2"), 4) == {(1, 1), (2, 2)}
    assert fundamental_set_K(forms(quiver("K3")), quiver("K3"), 2) == {(1, 1)}


def test_imaginary_examples():
    assert imaginary_roots_up_to(forms(quiver("K2")), quiver("K2"), 4) == pm((1, 1), (2, 2))
    assert imaginary_roots_up_to(forms(quiver("A2")), quiver("A2"), 9) == set()
    assert imaginary_roots_up_to(forms(quiver("K3")), quiver("K3"), 2) == pm((1, 1))


def test_root_kind_examples():
    assert root_kind(forms(quiver("A2")), quiver("A2"), (1, 1)) is RootKind.REAL_POSITIVE
    assert root_kind(forms(quiver("K2")), quiver("K2"), (2, 2)) is RootKind.IMAGINARY_POSITIVE
    assert root_kind(forms(quiver("K2")), quiver("K2"), (1, -1)) is RootKind.NOT_A_ROOT
    assert root_kind(forms(quiver("K2")), quiver("K2"), (0, 0)) is RootKind.ZERO
    assert root_kind(forms(quiver("A2")), quiver("A2"), (-1, -1)) is RootKind.REAL_NEGATIVE
    assert root_kind(forms(quiver("A2")), quiver("A2"), (2, 1)) is RootKind.NOT_A_ROOT


@pytest.mark.parametrize("name,h", [("A2", 6), ("A3", 6), ("A4", 6), ("D4", 8), ("K2", 10),
                                    ("tA2", 7), ("K3", 12)])
def test_roots_match_kac_descent_oracle(name, h):
    n, arrows = QUIVERS[name]
    real, imag = oracle.roots_oracle(n, arrows, h)
    rd = RootData(forms(quiver(name)), quiver(name), h)
    assert rd.real == real
    assert rd.imaginary == imag


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A3", "D4", "K2", "K3", "tA2"]), st.data())
def test_root_kind_negation_symmetry(name, data):
    f, q = forms(quiver(name)), quiver(name)
    lam = tuple(data.draw(st.lists(st.integers(0, 3), min_size=f.n, max_size=f.n)))
    k = root_kind(f, q, lam, h=12)
    assert root_kind(f, q, tuple(-x for x in lam), h=12) is k.negate()


def test_budget_exceeded():
    f = forms(Quiver.from_arrows(3, [(1, 2)] * 3 + [(2, 3)] * 3 + [(1, 3)] * 3))
    with pytest.raises(BudgetExceeded):
        real_roots_up_to(f, 60, budget=50)


def test_imaginary_budget_exceeded():
    q = Quiver.from_arrows(3, [(1, 2)] * 3 + [(2, 3)] * 3 + [(1, 3)] * 3)
    with pytest.raises(BudgetExceeded):
        imaginary_roots_up_to(forms(q), q, 40, budget=1000)

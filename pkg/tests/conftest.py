from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kacstab.gaussian import GQ
from kacstab.quiver import Quiver
from kacstab.stability import validate_charge

QUIVERS = {
    "A1": (1, []),
    "A2": (2, [(1, 2)]),
    "A3": (3, [(1, 2), (2, 3)]),
    "A4": (4, [(1, 2), (2, 3), (3, 4)]),
    "D4": (4, [(1, 2), (3, 2), (4, 2)]),
    "K2": (2, [(1, 2), (1, 2)]),
    "tA2": (3, [(1, 2), (2, 3), (1, 3)]),
    "K3": (2, [(1, 2), (1, 2), (1, 2)]),
}

GRID_SEED = 20240531
GRID_SIZE = 1000


def quiver(name: str) -> Quiver:
    n, arrows = QUIVERS[name]
    return Quiver.from_arrows(n, arrows)


def random_value(rng: random.Random) -> GQ:
    """A random Gaussian rational in the semiclosed upper half plane ℍ₋."""
    while True:
        z = GQ(Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
               Fraction(rng.randint(-1, 6), rng.randint(1, 4)))
        if z.in_semiclosed_upper():
            return z


def charge_grid(n: int, size: int = GRID_SIZE, seed: int = GRID_SEED):
    rng = random.Random(seed * 31 + n)
    return [validate_charge([random_value(rng) for _ in range(n)]) for _ in range(size)]


@pytest.fixture
def a2():
    return quiver("A2")


@pytest.fixture
def k2():
    return quiver("K2")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])

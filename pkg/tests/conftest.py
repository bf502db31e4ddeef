import sys

import pytest

from hyperpot.poly import MultiPoly


def circle():
    x1, x2 = MultiPoly.variables(2)
    return x1**2 + x2**2 - 1


def concentric(r1=1, r2=2):
    x1, x2 = MultiPoly.variables(2)
    s = x1**2 + x2**2
    return (s - r1 * r1) * (s - r2 * r2)


def unit_sphere():
    return MultiPoly.sum_of_squares(3) - 1


@pytest.fixture
def circ():
    return circle()


@pytest.fixture
def rings():
    return concentric()


@pytest.fixture
def sphere():
    return unit_sphere()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda l: int(l.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)

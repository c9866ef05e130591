import math

import pytest

from constwidth.curves import Circle, Ellipse, TrigTerm, make_constant_diameter, make_reuleaux

ACCEPTANCE = pytest.StashKey[list]()

# profiles of the three reference curves, coefficients as exact fractions
CURVE_TERMS = {
    "curve1": [TrigTerm(3, 1 / 3, 1 / 5)],
    "curve2": [TrigTerm(5, 1 / 2.01)],
    "curve3": [TrigTerm(3, 1 / 10), TrigTerm(7, 0.0, 1 / 2.501)],
}


def reference_curve(name, D=1.0):
    return make_constant_diameter(D, CURVE_TERMS[name])


@pytest.fixture(params=sorted(CURVE_TERMS))
def fourier_curve(request):
    return reference_curve(request.param)


@pytest.fixture
def curve1():
    return reference_curve("curve1")


@pytest.fixture
def circle():
    return Circle(0.5)


@pytest.fixture
def ellipse():
    return Ellipse(1.0, 0.6)


@pytest.fixture
def reuleaux():
    return make_reuleaux(3, 1.0)


INV_SQRT2 = 1 / math.sqrt(2)


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

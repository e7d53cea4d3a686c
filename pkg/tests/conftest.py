import math

import pytest

from ermakov_susy import families as fm

SQRT_PI = math.sqrt(math.pi)
OSC_REF = (math.pi / 4, SQRT_PI / 2, 1.0)

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def hyper045():
    return fm.hyperbolic(1.0, 0.45)


@pytest.fixture(scope="session")
def hyper05():
    return fm.hyperbolic(1.0, 0.5)


@pytest.fixture(scope="session")
def osc():
    return fm.osc_family(*OSC_REF)


@pytest.fixture(scope="session")
def periodic11():
    return fm.periodic(1.0, 1.0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")

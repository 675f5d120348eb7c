from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from puremod.modules import build_module  # noqa: E402
from puremod.rings import build_ring  # noqa: E402

Z8 = {"kind": "zmod", "n": 8}
F2X = {"kind": "poly_quot", "p": 2, "modulus": [0, 0, 1]}
KXY = {"kind": "kxy_m2", "p": 2}
GF2 = {"kind": "gf", "p": 2}
GF3 = {"kind": "gf", "p": 3}
MAT2 = {"kind": "matrix", "base": GF2, "n": 2}
UT2 = {"kind": "upper_tri", "base": {"kind": "zmod", "n": 2}, "n": 2}
PROD23 = {"kind": "product", "factors": [GF2, GF3]}


@pytest.fixture(scope="session")
def z2z8():
    return build_module(build_ring(Z8), {"kind": "zmod_sum", "orders": [2, 8]})


@pytest.fixture(scope="session")
def dual():
    """R_R for R = F2[x]/(x²)."""
    return build_module(build_ring(F2X), {"kind": "regular"})


@pytest.fixture(scope="session")
def dual2():
    return build_module(build_ring(F2X), {"kind": "free", "n": 2})


@pytest.fixture(scope="session")
def kxy2():
    return build_module(build_ring(KXY), {"kind": "free", "n": 2})


@pytest.fixture(scope="session")
def f3sq():
    return build_module(build_ring(GF3), {"kind": "free", "n": 2})


# -- acceptance reporting: one PASS/FAIL line per criterion ---------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[n] = ("PASS" if rep.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, title = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2} {status}  {title}")

import time
from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

from horncalc.formats import parse_calculus, parse_proof
from horncalc.g3i import build_g3i

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES = files("horncalc") / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture(scope="session")
def g3i_explicit():
    return build_g3i(True)


@pytest.fixture(scope="session")
def g3i_implicit():
    return build_g3i(False)


@pytest.fixture(scope="session")
def example_calc():
    return parse_calculus(fixture_text("four_rule.calc"))


@pytest.fixture
def load_proof():
    return lambda name: parse_proof(fixture_text(name))


# acceptance summary: one PASS/FAIL line per criterion, shown after the run

ACCEPTANCE: dict[str, str] = {}


class Criterion:
    """Times a criterion body and records its PASS/FAIL line, also on exceptions."""

    def __init__(self, cid: str, title: str, limit: float):
        self.cid, self.title, self.limit = cid, title, limit
        self.ok = False
        self.detail = ""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc is not None:
            self.ok, self.detail = False, f"{exc_type.__name__}: {exc}"
        fast = elapsed < self.limit
        status = "PASS" if self.ok and fast else "FAIL"
        line = f"{status} {self.cid} {self.title}: {self.detail} ({elapsed:.2f}s, limit {self.limit:g}s)"
        ACCEPTANCE[self.cid] = line
        print(line)
        if exc is None:
            assert self.ok, line
            assert fast, line
        return False


@pytest.fixture
def accept():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for cid in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
            terminalreporter.write_line(ACCEPTANCE[cid])

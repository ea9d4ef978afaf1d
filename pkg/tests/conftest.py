import pytest

from pargroupoid.fixtures import all_fixtures, fixture

FIXTURE_NAMES = ["ex1", "z2", "z3", "pair2", "pair3", "z2-disjoint-z2"]

# criterion id -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def fixtures():
    return all_fixtures()


@pytest.fixture(scope="session")
def ex1():
    return fixture("ex1")


@pytest.fixture(params=FIXTURE_NAMES)
def named_groupoid(request):
    return request.param, fixture(request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=str):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")

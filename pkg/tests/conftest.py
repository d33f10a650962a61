import pytest

from squarewell import WellSpec, solve_all

# id -> (description, passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def well():
    return WellSpec(10.0, 2.0)


@pytest.fixture(scope="session")
def states(well):
    return solve_all(well)


@pytest.fixture(scope="session")
def ground(states):
    return states[0]


@pytest.fixture(scope="session")
def excited(states):
    return states[1]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        desc, passed, detail = ACCEPTANCE_RESULTS[key]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{mark}  {key}  {desc}  ({detail})")

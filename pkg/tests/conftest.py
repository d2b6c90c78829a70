import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=20240801,
        help="seed for the randomized property suites",
    )


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


_ACCEPTANCE_REPORTS = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE_REPORTS[report.nodeid] = report


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_REPORTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE_REPORTS):
        report = _ACCEPTANCE_REPORTS[nodeid]
        name = nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({report.duration:.1f}s)")

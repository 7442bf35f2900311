import pytest

from pgraphs import algebra, catalog, spielberg


@pytest.fixture(scope="session")
def grid():
    return catalog.grid3()


@pytest.fixture(scope="session")
def rep_t(grid):
    return algebra.Representation(grid, algebra.T)


@pytest.fixture(scope="session")
def rep_omega(grid):
    return algebra.Representation(grid, algebra.OMEGA)


@pytest.fixture(scope="session")
def hyb():
    return spielberg.hyb1()


@pytest.fixture(scope="session")
def hyb_omega(hyb):
    return spielberg.omega_representation(hyb)


@pytest.fixture(scope="session")
def sy():
    return catalog.build_sy((2, 2))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    details = "; ".join("{}={}".format(k, v) for k, v in item.user_properties)
    results = item.config._criteria
    if report.when == "call" or (report.when == "setup" and report.failed):
        results[number] = ("PASS" if report.passed else "FAIL", title, details)


def pytest_terminal_summary(terminalreporter, config):
    results = config._criteria
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, title, details = results[number]
        line = "criterion {:>2} {}  {}".format(number, status, title)
        if details:
            line += "  ({})".format(details)
        terminalreporter.write_line(line)

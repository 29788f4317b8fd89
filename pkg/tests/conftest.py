import pytest

from hermlift.eigenforms import ingest_newform, level1_eigenform
from hermlift.quadfield import class_group


@pytest.fixture(scope="session")
def f3():
    return ingest_newform("example1")


@pytest.fixture(scope="session")
def f15():
    return ingest_newform("example2")


@pytest.fixture(scope="session")
def delta():
    return level1_eigenform(12, 1600)


@pytest.fixture(scope="session")
def cg3():
    return class_group(3)


@pytest.fixture(scope="session")
def cg15():
    return class_group(15)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)

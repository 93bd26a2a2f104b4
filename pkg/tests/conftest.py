import pytest

from fuglede_lab import certificates
from fuglede_lab.group_core import GroupParams

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _cross_check(monkeypatch):
    # every tiling verdict in the suite also runs the Fourier-side criterion
    monkeypatch.setattr(certificates, "CROSS_CHECK", True)


@pytest.fixture
def G2():
    return GroupParams(2, 2, 1)


@pytest.fixture
def G3():
    return GroupParams(3, 2, 1)



def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

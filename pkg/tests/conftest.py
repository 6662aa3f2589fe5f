import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lefschetz_lab import samples  # noqa: E402


@pytest.fixture(scope="session")
def octahedron():
    return samples.octahedron()


@pytest.fixture(scope="session")
def suite():
    return samples.suite()


ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        detail = ACCEPTANCE.get(name, (None, ""))[1]
        ACCEPTANCE[name] = (report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(ACCEPTANCE.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")

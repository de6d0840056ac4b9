import re
from pathlib import Path

import pytest

from quasikit.serialize import fixtures_dir

DATA = Path(__file__).parent / "data"

_criteria = {}


@pytest.fixture
def fixtures():
    return fixtures_dir()


@pytest.fixture
def data():
    return DATA


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ok, secs = _criteria.get(n, (True, 0.0))
        _criteria[n] = (ok and report.outcome == "passed", secs + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, secs = _criteria[n]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict} ({secs:.2f}s)")

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, bool] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number = _criterion_of(report)
    if number is not None:
        _criteria[number] = _criteria.get(number, True) and report.passed


def _criterion_of(report):
    for name in report.keywords:
        if name.startswith("test_criterion_"):
            return int(name.split("_")[2])
    return None


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if _criteria[number] else 'FAIL'}")

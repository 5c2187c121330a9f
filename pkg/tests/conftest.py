import re

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_(ac\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = f"{m.group(1).upper()} {m.group(2)}"
    if report.when == "call" or report.outcome != "passed":
        prev = _ACCEPTANCE.get(key)
        if prev != "FAIL":
            _ACCEPTANCE[key] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(f"{_ACCEPTANCE[key]}  {key}")

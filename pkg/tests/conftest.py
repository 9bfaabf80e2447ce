import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_verdicts = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n = mark.args[0]
    ok = not rep.failed and not (rep.when == "setup" and rep.skipped)
    if rep.when == "call" or not ok:
        _verdicts[n] = _verdicts.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance")
    for n in sorted(_verdicts):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _verdicts[n] else 'FAIL'}")

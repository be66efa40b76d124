import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    _RESULTS[item.nodeid] = (mark.args[0], mark.args[1], call.excinfo is None,
                             call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, ok, secs in _RESULTS.values():
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {cid}: {title} ({secs:.1f}s)")

import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict[str, list[bool]] = {}


def _label(nodeid: str) -> str | None:
    if "test_acceptance.py::" not in nodeid:
        return None
    name = nodeid.split("::", 1)[1]
    m = re.match(r"test_criterion_(\d+)_", name)
    if m:
        return f"criterion {m.group(1)}"
    if name.startswith("test_monster_stub"):
        return "monster stub"
    return None


def pytest_runtest_logreport(report):
    label = _label(report.nodeid)
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(label, []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")

    def key(label):
        parts = label.split()
        return (0, int(parts[1])) if parts[0] == "criterion" else (1, 0)

    for label in sorted(_CRITERIA, key=key):
        verdict = "PASS" if all(_CRITERIA[label]) else "FAIL"
        terminalreporter.write_line(f"{label}: {verdict}")

from importlib.resources import files

import pytest

from steinerpc.formats import parse_system

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def sts9_path():
    return str(files("steinerpc") / "data" / "sts9.txt")


@pytest.fixture
def sts9(sts9_path):
    with open(sts9_path) as fh:
        return parse_system(fh.read()).system


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(name: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((name, ok, detail))
        print(f"{'PASS' if ok else 'FAIL'} {name} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")

from pathlib import Path

import pytest

from datum.dsl import parse_file

PACKAGE_FIXTURES = Path(__file__).resolve().parent.parent / "src" / "datum" / "fixtures"
TEST_FIXTURES = Path(__file__).resolve().parent / "fixtures"


def fixture_path(name: str) -> Path:
    for root in (PACKAGE_FIXTURES, TEST_FIXTURES):
        if (root / name).exists():
            return root / name
    raise FileNotFoundError(name)


@pytest.fixture(scope="session")
def load():
    cache = {}

    def _load(name):
        if name not in cache:
            cache[name] = parse_file(fixture_path(name))
        return cache[name]

    return _load


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str) -> bool:
    ACCEPTANCE[criterion] = (ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("abcde")), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {key:<3} {detail}")

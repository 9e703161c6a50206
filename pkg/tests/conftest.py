import pytest

from parlab.tiling import build_table

# criterion number -> (passed, description); filled in by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def table():
    return build_table


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {desc}")

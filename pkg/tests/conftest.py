from __future__ import annotations

import pytest

from ltsieve.tables.golden import group_cases, load_golden


@pytest.fixture(scope="session")
def golden():
    return load_golden("all")


@pytest.fixture(scope="session")
def cases(golden):
    """(table, case_id) -> rows."""
    return group_cases(golden)


@pytest.fixture(scope="session")
def case_params(cases):
    return {ident: rows[0].parameter_set() for ident, rows in cases.items()}


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance(capsys):
    """record(n, ok, detail): print one PASS/FAIL line and keep it for the summary."""
    def record(n: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE[n] = (ok, detail)
        with capsys.disabled():
            print(f"\n  criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")

from __future__ import annotations

import pytest
from hypothesis import settings

from superspec.groups import dihedral

# timing varies on shared machines; example counts are pinned per test
settings.register_profile("superspec", deadline=None)
settings.load_profile("superspec")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def d6_table(tmp_path):
    path = tmp_path / "d6.txt"
    path.write_text(dihedral(3).to_text(), encoding="utf-8")
    return path

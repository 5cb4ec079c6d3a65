"""Shared fixtures and the acceptance-criteria terminal summary.

The genus-2 list fixture memoizes per-prime closures for the whole session,
since several suites need the same lists and the big ones are expensive.
Acceptance tests record one pass/fail line each; the summary hook prints
them after the run so the gate is readable at a glance.
"""

import pytest

from howecurves import FieldCtx, superspecial_genus2_list

_CRITERIA = {}


def _record(num, label, passed, detail=""):
    _CRITERIA[num] = (label, bool(passed), detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        label, passed, detail = _CRITERIA[num]
        line = "criterion %d (%s): %s" % (num, label, "PASS" if passed else "FAIL")
        if detail:
            line += " -- " + detail
        terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Recorder for acceptance tests: criterion(num, label, passed, detail)."""
    return _record


@pytest.fixture(scope="session")
def genus2_lists():
    """Memoized superspecial genus-2 lists, keyed by p."""
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = superspecial_genus2_list(FieldCtx(p))
        return cache[p]

    return get

"""Acceptance criteria A1-A9, one PASS/FAIL line each.

The lines go straight to the terminal reporter so they appear under plain
``pytest -v`` as well as in a direct ``python tests/test_acceptance.py`` run."""

from __future__ import annotations

import sys

import pytest

from joinmirror.checks import CHECKS, run_check


@pytest.fixture
def report(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def write(check):
        line = check.line()
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(line)
            for note in check.notes:
                reporter.write_line(f"    {note}")
        else:
            print(line)
    return write


@pytest.mark.parametrize("ident", list(CHECKS))
def test_criterion(ident, report):
    check = run_check(ident)
    report(check)
    failed = [f"{i['label']}: computed {i['computed']}, expected {i['expected']}"
              for i in check.items if i["required"] and not i["ok"]]
    assert check.error is None, check.error
    assert check.passed, "; ".join(failed)
    assert any(i["required"] for i in check.items)


if __name__ == "__main__":
    results = [run_check(ident) for ident in CHECKS]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)

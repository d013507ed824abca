"""Acceptance criteria, one test each.

Every criterion prints a single ``[PASS]`` / ``[FAIL]`` line (shown even
under output capture) and then asserts; failing checks are listed in the
assertion message.
"""

import pytest

from omac.acceptance import CRITERIA, Context, run_criterion


@pytest.fixture(scope="module")
def ctx():
    # Shared so the 1000-instance suite, its oracles and runs are built once.
    return Context()


@pytest.mark.parametrize("entry", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(entry, ctx, capsys):
    res = run_criterion(entry, ctx)
    with capsys.disabled():
        print("\n" + res.line())
    failed = [f"{c.name}: {c.detail}" for c in res.checks if not c.passed]
    assert res.passed, "\n".join(failed)


def test_criteria_are_numbered_one_to_nine():
    assert [c[0] for c in CRITERIA] == list(range(1, 10))

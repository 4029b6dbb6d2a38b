"""One line per acceptance criterion; run with ``pytest -s`` or as a script."""

import pytest

from qresurge.acceptance import CRITERIA, run_one


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion-{c.number:02d}")
def test_criterion(criterion, capsys):
    result = run_one(criterion)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


if __name__ == "__main__":
    import sys

    from qresurge.acceptance import run_all

    sys.exit(0 if all(r.passed for r in run_all(echo=print)) else 1)

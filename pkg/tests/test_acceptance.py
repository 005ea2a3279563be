"""The twelve acceptance criteria, one pass/fail line each."""
import pytest

from haarwords.acceptance import CRITERIA, Options, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number, Options())
    with capsys.disabled():
        print("\n" + result.line())
        for line in result.details:
            print("    " + line)
    assert result.passed, "\n".join(result.details)
